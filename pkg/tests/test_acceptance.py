"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]`` / ``[FAIL]`` line (bypassing output
capture) with the measured quantity and its tolerance, then asserts.
"""

import math
import time

import numpy as np
import pytest

from npconfig.aconfig import a_lower_bound
from npconfig.bounds import curvature_bound, ellipse_config_constant, spectral_constant_ellipse
from npconfig.domain import build
from npconfig.mindisk import angular_gaps, min_enclosing_disk, support_set
from npconfig.npkernel import apply_K, config_constant, interior_measure_checks, sample_function
from npconfig.numrange import random_matrix, random_poly, verify_bound
from npconfig.threemeasures import (
    FiniteMeasureSet,
    discrete_inequality,
    polytope_census,
    verify_image_radius,
)

from conftest import DISK, ELLIPSE21, PENTAGON, SECTOR90, SQUARE, TRIANGLE
from test_mindisk import brute_radius


@pytest.fixture
def report(capsys):
    def emit(label: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, detail

    return emit


def test_01_ellipse_closed_form(report):
    t0 = time.perf_counter()
    worst = 0.0
    for a, b in [(1, 1), (2, 1), (3, 2), (5, 1)]:
        d = build({"type": "ellipse", "a": a, "b": b})
        worst = max(worst, abs(config_constant(d).value - ellipse_config_constant(a, b)))
    dt = time.perf_counter() - t0
    report("C1 ellipse closed form", worst <= 1e-4 and dt <= 60,
           f"max |delta| = {worst:.2e} (tol 1e-4), {dt:.1f} s (limit 60 s)")


def test_02_disk_characterization(report):
    d = build(DISK)
    c = config_constant(d).value
    a = a_lower_bound(d, degree=8, restarts=4, iters=1000)["value"]
    rng = np.random.default_rng(2)
    spread = 0.0
    zetas = range(0, d.n_nodes, 7)
    for _ in range(10):
        f = rng.normal(size=d.n_nodes) + 1j * rng.normal(size=d.n_nodes)
        vals = np.array([apply_K(d, f, i) for i in zetas])
        spread = max(spread, float(np.max(np.abs(vals - vals[0]))))
    ok = c <= 1e-8 and a <= 1e-8 and spread <= 1e-9
    report("C2 disk", ok, f"c = {c:.1e}, a_lower = {a:.1e} (tol 1e-8), K f spread = {spread:.1e} (tol 1e-9)")


def test_03_exceptional_cases(report):
    tri = config_constant(build(TRIANGLE))
    sq = config_constant(build(SQUARE))
    pent = config_constant(build(PENTAGON)).value
    corners = all(p.corner is not None for r in (tri, sq) for p in r.witness)
    ok = tri.value >= 1 - 1e-6 and sq.value >= 1 - 1e-6 and corners and pent < 1 - 1e-3
    report("C3 exceptional cases", ok,
           f"c(triangle) = {tri.value:.12f}, c(square) = {sq.value:.12f} (>= 1-1e-6, corner witnesses: {corners}), "
           f"c(pentagon) = {pent:.6f} (< 1-1e-3)")


def test_04_curvature_bound(report):
    sector_err = 0.0
    for theta in (math.pi / 4, math.pi / 2, math.pi):
        d = build({"type": "sector", "r": 1.0, "theta": theta})
        sector_err = max(sector_err, abs(curvature_bound(d).bound - (1 - theta / (2 * math.pi))))
    margin = math.inf
    for spec in (DISK, ELLIPSE21, SECTOR90):
        d = build(spec)
        margin = min(margin, curvature_bound(d).bound - config_constant(d).value)
    report("C4 curvature bound", sector_err <= 1e-6 and margin >= -1e-4,
           f"sector |delta| = {sector_err:.1e} (tol 1e-6), min(bound - c) = {margin:.3e} (>= -1e-4)")


def test_05_three_measures_inequality(report):
    rng = np.random.default_rng(5)
    t0 = time.perf_counter()
    worst = math.inf
    ns = rng.integers(1, 9, size=100_000)
    for n in ns:
        x, y = rng.normal(size=n), rng.normal(size=n)
        al = complex(rng.normal(), rng.normal())
        be = complex(rng.normal(), rng.normal())
        worst = min(worst, discrete_inequality(x, y, al, be)["slack"])
    dt = time.perf_counter() - t0
    eq = discrete_inequality([1, 0], [0.5, 0.5], 1, 1)["slack"]
    ok = worst >= -1e-12 and abs(eq) <= 1e-12 and dt <= 10
    report("C5 three-measures inequality", ok,
           f"min slack over 1e5 draws = {worst:.3e} (>= -1e-12), equality slack = {eq:.1e} (tol 1e-12), {dt:.1f} s (limit 10 s)")


def test_06_polytope_census(report):
    counts = {n: len(polytope_census(n)["classes"]) for n in (1, 2, 3)}
    census3 = polytope_census(3)
    e1, e2, e3 = np.eye(3)
    displayed = [(e1, e1), (e1, (e1 + e2) / 2), ((e1 + e2) / 2, (e1 + e3) / 2)]
    from npconfig.threemeasures import PairVector, gn_canonicalize

    want = {gn_canonicalize(PairVector(tuple(x), tuple(y))) for x, y in displayed}
    got = {PairVector(tuple(c["x"]), tuple(c["y"])) for c in census3["classes"]}
    ok = counts == {1: 1, 2: 2, 3: 3} and want == got
    report("C6 polytope census", ok, f"classes per n = {counts} (want 1/2/3), n=3 matches displayed pairs: {want == got}")


def test_07_finite_operator_norm(report):
    rng = np.random.default_rng(7)
    worst_hi, worst_align = 0.0, math.inf
    for trial in range(200):
        k, m = int(rng.integers(2, 7)), int(rng.integers(1, 41))
        rep = verify_image_radius(FiniteMeasureSet(rng.normal(size=(k, m))), trials=200, seed=trial)
        worst_hi = max(worst_hi, rep["max_ratio"])
        worst_align = min(worst_align, rep["alignment_ratio"])
    ok = worst_hi <= 1 + 1e-9 and worst_align >= 1 - 1e-6
    report("C7 finite-X operator norm", ok,
           f"max ratio = {worst_hi:.15f} (<= 1+1e-9), min alignment ratio = {worst_align:.15f} (>= 1-1e-6)")


def test_08_minimal_disk(report):
    rng = np.random.default_rng(8)
    worst, gap, jung = 0.0, 0.0, 0.0
    for _ in range(1000):
        m = int(rng.integers(2, 13))
        pts = list(rng.normal(size=m) + 1j * rng.normal(size=m))
        disk = min_enclosing_disk(pts)
        worst = max(worst, abs(disk.radius - brute_radius(pts)))
        gap = max(gap, max(angular_gaps(support_set(pts), disk.center)))
        diam = max(abs(a - b) for a in pts for b in pts)
        jung = max(jung, disk.radius / diam)
    ok = worst <= 1e-10 and gap <= math.pi + 1e-9 and jung <= 1 / math.sqrt(3) + 1e-12
    report("C8 minimal disk", ok,
           f"max |r - brute| = {worst:.1e} (tol 1e-10), max gap - pi = {gap - math.pi:.2e} (<= 1e-9), "
           f"max r/diam = {jung:.6f} (<= {1 / math.sqrt(3):.6f})")


@pytest.mark.slow
def test_09_spectral_harness(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    n_cp = n_imp = 0
    min_cp = min_imp = math.inf
    trials = 500
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        t = random_matrix(n, rng)
        p = random_poly(int(rng.integers(1, 7)), rng)
        r = verify_bound(t, p, angles=64)
        n_cp += r.pass_cp
        n_imp += r.pass_improved
        min_cp = min(min_cp, r.slack_cp)
        min_imp = min(min_imp, r.slack_improved)
    jordan = verify_bound(np.array([[0, 1], [0, 0]]), [0, 1])
    sharp = abs(2.0 - jordan.ratio)
    ks = [spectral_constant_ellipse(a, 1) for a in (1, 2, 5, 20, 100)]
    mono = all(x < y for x, y in zip(ks, ks[1:])) and ks[-1] < 1 + math.sqrt(2)
    numeric = max(abs(1 + math.sqrt(1 + config_constant(build({"type": "ellipse", "a": a, "b": 1})).value) - k)
                  for a, k in zip((1, 2, 5, 20), ks))
    dt = time.perf_counter() - t0
    ok = (n_cp == trials and n_imp == trials and sharp <= 1e-3 and ks[0] == 2.0 and mono
          and numeric <= 1e-4 and dt <= 300)
    report("C9 spectral harness", ok,
           f"pass_cp {n_cp}/{trials}, pass_improved {n_imp}/{trials} (min slack cp {min_cp:.3f}, improved {min_imp:.3f}); "
           f"Jordan |2 - ratio| = {sharp:.1e} (tol 1e-3); K(1,1) = {ks[0]}, K(a,1) increasing to {ks[-1]:.6f} "
           f"< 1+sqrt2: {mono}; numeric K max |delta| = {numeric:.1e}; {dt:.0f} s (limit 300 s)")


def test_10_interior_measures(report):
    rng = np.random.default_rng(10)
    worst = 0.0
    doms = [build(ELLIPSE21), build(PENTAGON), build(SECTOR90)]
    for k in range(20):
        d = doms[k % 3]
        one = sample_function(d, lambda z: 1.0)
        bp = d.point_at_arclength(rng.uniform(0, d.perimeter))
        cen = d.centroid()
        z = cen + rng.uniform(0, 0.999) * (bp.z - cen)
        worst = max(worst, abs(interior_measure_checks(d, z, one)["mass"] - 2.0))
    d = doms[0]
    decreasing = 0
    for _ in range(10):
        c = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        f = sample_function(d, lambda z: sum(c[i, j] * z**i * np.conj(z) ** j for i in range(3) for j in range(3)))
        i = int(rng.integers(0, d.n_nodes))
        zeta = d.nodes[i]
        target = f[i] + apply_K(d, f, i)
        gaps = [abs(interior_measure_checks(d, r * zeta, f)["value"] - target) for r in (0.6, 0.8, 0.9, 0.95, 0.98)]
        decreasing += all(a > b for a, b in zip(gaps, gaps[1:]))
    ok = worst <= 1e-7 and decreasing == 10
    report("C10 interior measures", ok,
           f"max |mass - 2| = {worst:.1e} (tol 1e-7), strictly decreasing weak-star gaps: {decreasing}/10")


def test_11_a_below_c(report):
    worst_gap, worst_a = -math.inf, 0.0
    vals = {}
    for name, spec in [("disk", DISK), ("ellipse", ELLIPSE21), ("square", SQUARE), ("triangle", TRIANGLE)]:
        d = build(spec)
        a = a_lower_bound(d, degree=8, restarts=4, iters=2000)["value"]
        c = config_constant(d).value
        vals[name] = (a, c)
        worst_gap = max(worst_gap, a - c)
        worst_a = max(worst_a, a)
    ok = worst_gap <= 1e-4 and worst_a < 1 - 1e-6
    detail = ", ".join(f"{k}: a={a:.4f} c={c:.4f}" for k, (a, c) in vals.items())
    report("C11 a <= c", ok, f"{detail}; max(a - c) = {worst_gap:.3f} (<= 1e-4), max a = {worst_a:.4f} (< 1-1e-6)")
