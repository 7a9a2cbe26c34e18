import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from npconfig.domain import (
    affine_image,
    build,
    convex_hull,
    corners,
    domain_from_json,
    domain_to_json,
    gauss_legendre,
)
from npconfig.errors import DegenerateDomain, NonConvex, OffBoundary

from conftest import DISK, ELLIPSE21, SECTOR90, SQUARE, TRIANGLE


def test_disk_perimeter(disk):
    assert abs(disk.perimeter - 2 * math.pi) <= 1e-10


def test_triangle_perimeter(triangle):
    assert abs(triangle.perimeter - (2 + 2 * math.sqrt(2))) <= 1e-12


def test_sector_corners(sector90):
    cs = corners(sector90)
    assert len(cs) == 3
    assert all(abs(c.theta - math.pi / 2) <= 1e-12 for c in cs)
    assert any(abs(c.point) <= 1e-15 for c in cs)


def test_half_disk_has_two_corners():
    d = build({"type": "sector", "r": 1.0, "theta": math.pi})
    assert len(d.corners) == 2
    assert all(abs(c.theta - math.pi / 2) <= 1e-12 for c in d.corners)


def test_ellipse_is_smooth(ellipse21):
    assert corners(ellipse21) == []


def test_square_corners(square):
    cs = corners(square)
    assert len(cs) == 4 and all(abs(c.theta - math.pi / 2) <= 1e-12 for c in cs)


def test_thin_triangle_apertures():
    for eps in (1e-1, 1e-3, 1e-6):
        d = build({"type": "polygon", "vertices": [[-1, 0], [1, 0], [0, eps]]})
        thetas = sorted(c.theta for c in d.corners)
        assert thetas[-1] == pytest.approx(math.pi - 2 * math.atan(eps), abs=1e-12)
        assert thetas[0] == pytest.approx(math.atan(eps), abs=1e-12)


@pytest.mark.parametrize("spec", [DISK, ELLIPSE21, SQUARE, TRIANGLE, SECTOR90])
def test_total_turning(spec):
    assert build(spec).total_turning() == pytest.approx(2 * math.pi, abs=1e-8)


@pytest.mark.parametrize("spec", [DISK, ELLIPSE21, SQUARE, TRIANGLE, SECTOR90])
def test_orientation_and_normals(spec):
    d = build(spec)
    z = d.nodes
    area = 0.5 * np.sum((np.conj(z) * np.roll(z, -1)).imag)
    assert area > 0
    assert np.allclose(np.abs(d.tangents), 1.0, atol=1e-14)
    assert np.allclose(d.normals, -1j * d.tangents)
    eps = 1e-6 * d.scale
    assert not any(d.contains(p) for p in (z + eps * d.normals)[::37])


@pytest.mark.parametrize("spec", [DISK, ELLIPSE21, SQUARE, SECTOR90])
def test_convex_chords(spec):
    d = build(spec)
    z = d.nodes
    a, b = np.roll(z, -1) - z, np.roll(z, -2) - np.roll(z, -1)
    cross = (np.conj(a) * b).imag
    assert cross.min() >= -1e-12 * d.scale**2


def test_corners_are_panel_ends(square):
    cpts = np.array([c.point for c in square.corners])
    assert np.min(np.abs(square.nodes[:, None] - cpts[None, :])) > 0
    for j, ta, tb, i0, i1, smooth in square.panel_table:
        pts = [square.arcs[j].point(ta), square.arcs[j].point(tb)]
        touches = any(abs(p - c) < 1e-15 for p in pts for c in cpts)
        assert smooth == (not touches)


def test_ellipse_refinement_stable():
    a = build(ELLIPSE21)
    b = build(ELLIPSE21, panels_per_arc=128)
    assert abs(a.perimeter - b.perimeter) < 1e-10


def test_gauss_legendre_exactness():
    x, w = gauss_legendre(8)
    assert sum(w * x**14) == pytest.approx(2 / 15, abs=1e-15)


def test_affine_identity(triangle):
    img = affine_image(triangle, 1, 0)
    assert np.allclose(img.nodes, triangle.nodes)


def test_affine_square():
    img = affine_image(build(SQUARE), 2, 1j)
    assert img.perimeter == pytest.approx(8.0, abs=1e-12)
    assert sorted((v.real, v.imag) for v in img.params["vertices"]) == [(0, 1), (0, 3), (2, 1), (2, 3)]


def test_affine_rotation_keeps_perimeter(triangle):
    img = affine_image(triangle, 1j, 0)
    assert img.perimeter == pytest.approx(triangle.perimeter, abs=1e-12)
    assert np.allclose(img.nodes, 1j * triangle.nodes, atol=1e-14)


def test_affine_ellipse_stays_ellipse(ellipse21):
    img = affine_image(ellipse21, 3 * np.exp(0.7j), 1 - 2j)
    assert img.kind == "ellipse"
    assert img.perimeter == pytest.approx(3 * ellipse21.perimeter, rel=1e-12)
    assert np.allclose(img.nodes, 3 * np.exp(0.7j) * ellipse21.nodes + 1 - 2j, atol=1e-12)


def test_clockwise_polygon_is_reoriented():
    d = build({"type": "polygon", "vertices": [[0, 0], [0, 1], [1, 1], [1, 0]]})
    assert d.area() == pytest.approx(1.0)


def test_nonconvex_rejected():
    with pytest.raises(NonConvex):
        build({"type": "polygon", "vertices": [[0, 0], [2, 0], [0.5, 0.5], [0, 2]]})


def test_degenerate_rejected():
    with pytest.raises(DegenerateDomain):
        build({"type": "polygon", "vertices": [[0, 0], [1, 1], [2, 2]]})
    with pytest.raises(DegenerateDomain):
        build({"type": "polygon", "vertices": [[0, 0], [1, 0], [1, 0], [0, 1]]})
    with pytest.raises(DegenerateDomain):
        build({"type": "ellipse", "a": 0, "b": 1})


def test_hull_drops_interior_and_collinear():
    pts = [[0, 0], [2, 0], [1, 0], [2, 2], [0, 2], [1, 1], [0, 1]]
    d = build({"type": "hull", "points": pts})
    assert len(d.corners) == 4
    assert d.area() == pytest.approx(4.0)


def test_convex_hull_orientation():
    v = convex_hull([0, 1, 1 + 1j, 1j, 0.5 + 0.5j])
    assert len(v) == 4
    z = np.array(v)
    assert 0.5 * np.sum((np.conj(z) * np.roll(z, -1)).imag) > 0


def test_locate_and_off_boundary(ellipse21):
    bp = ellipse21.locate(2.0)
    assert abs(bp.z - 2.0) < 1e-14
    with pytest.raises(OffBoundary):
        ellipse21.locate(1.0)


def test_contains_near_boundary(ellipse21):
    assert ellipse21.contains(1.999)
    assert not ellipse21.contains(2.0)
    assert not ellipse21.contains(2.001)


def test_arclength_grids_are_nested(ellipse21):
    coarse = {p.key() for p in ellipse21.arclength_samples(16)}
    fine = {p.key() for p in ellipse21.arclength_samples(32)}
    assert coarse <= fine


def test_base_points_include_corners(square):
    pts = square.base_points(8)
    assert len(pts) == 8
    assert sum(p.corner is not None for p in pts) == 4


def test_json_round_trip(triangle):
    again = domain_from_json(domain_to_json(triangle))
    assert np.allclose(again.nodes, triangle.nodes)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.2, 5.0), st.floats(0.2, 5.0))
def test_ellipse_perimeter_matches_ramanujan_bracket(a, b):
    d = build({"type": "ellipse", "a": a, "b": b}, panels_per_arc=32)
    h = ((a - b) / (a + b)) ** 2
    ramanujan = math.pi * (a + b) * (1 + 3 * h / (10 + math.sqrt(4 - 3 * h)))
    # Ramanujan's second formula is accurate to ~h^5 relative
    assert d.perimeter == pytest.approx(ramanujan, rel=1e-4)
