"""Numerical range of a square matrix and an empirical check of spectral bounds.

The numerical range ``W(T) = {<Tx, x> : |x| = 1}`` is convex. For each direction
``e^{i theta}`` the top eigenvector ``v`` of ``Re(e^{-i theta} T)`` gives the
support point ``<Tv, v>``, so a sweep over directions yields points *on* the
boundary and their hull is an inner approximation.

:func:`verify_bound` compares ``||p(T)||`` with ``k ||p||_W`` for the constant
``1 + sqrt(2)`` and for the domain-dependent ``1 + sqrt(1 + c(W))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import domain as dom
from .errors import EmptyInterior, ZeroPolynomial
from .linalg import as_cmatrix, herm_eig_batch, op_norm, poly_apply
from .npkernel import config_constant

MIN_ANGLES = 16
MAX_DEGREE = 16
DILATION = 1e-6
K_CP = 1.0 + math.sqrt(2.0)


@dataclass(frozen=True)
class NumRange:
    boundary_points: np.ndarray  # support points, counter-clockwise in theta
    hull: Optional[dom.ConvexDomain]  # None when W(T) has empty interior
    vertices: tuple  # hull vertices (the convex hull of boundary_points)
    area: float

    @property
    def empty_interior(self) -> bool:
        return self.hull is None


@dataclass(frozen=True)
class BoundReport:
    lhs: float
    sup_norm: float
    c_of_W: float
    k_improved: float
    k_cp: float
    pass_improved: bool
    pass_cp: bool
    ratio: float
    slack_improved: float
    slack_cp: float


def _polygon_area(v: Sequence[complex]) -> float:
    if len(v) < 3:
        return 0.0
    z = np.asarray(v, dtype=complex)
    return 0.5 * float(np.sum((np.conj(z) * np.roll(z, -1)).imag))


def numerical_range(t, angles: int = 256, hull_panels: int = 2) -> NumRange:
    """Inner polygonal approximation of ``W(T)`` from ``angles`` support points."""
    if angles < MIN_ANGLES:
        raise ValueError(f"angles must be at least {MIN_ANGLES}")
    a = as_cmatrix(t)
    theta = 2.0 * np.pi * np.arange(angles) / angles
    ph = np.exp(-1j * theta)[:, None, None]
    h = 0.5 * (ph * a[None] + np.conj(ph) * np.conj(a.T)[None])
    _, vecs = herm_eig_batch(h)
    v = vecs[:, :, 0]
    pts = np.einsum("ki,ij,kj->k", np.conj(v), a, v)
    verts = dom.convex_hull(list(pts))
    area = _polygon_area(verts)
    norm = op_norm(a)
    hull = None
    if len(verts) >= 3 and area > 1e-8 * max(norm, 1e-300) ** 2:
        hull = dom.build({"type": "hull", "points": verts}, panels_per_arc=hull_panels, nodes_per_panel=4, grading_levels=2)
    return NumRange(pts, hull, tuple(verts), area)


def _boundary_samples(d: dom.ConvexDomain, samples: int) -> np.ndarray:
    pts = [p.z for p in d.arclength_samples(samples)]
    pts += [c.point for c in d.corners]
    return np.asarray(pts, dtype=complex)


def _check_poly(p) -> np.ndarray:
    c = np.asarray(p, dtype=complex)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("need polynomial coefficients c0, c1, ...")
    if c.size - 1 > MAX_DEGREE:
        raise ValueError(f"polynomial degree is capped at {MAX_DEGREE}")
    if not np.any(c):
        raise ZeroPolynomial("polynomial is identically zero")
    return c


def sup_norm_boundary(p, d: dom.ConvexDomain, samples: int = 256) -> float:
    """``max |p|`` over equal-arclength boundary samples and all corners."""
    if samples < 64:
        raise ValueError("samples must be at least 64")
    c = np.asarray(p, dtype=complex)
    z = _boundary_samples(d, samples)
    return float(np.max(np.abs(np.polyval(c[::-1], z))))


def verify_bound(t, p, angles: int = 128, samples: int = 512, dilation: float = DILATION,
                 c_samples: int = 64) -> BoundReport:
    """Check ``||p(T)|| <= k ||p||_W`` for ``k = 1 + sqrt(1 + c(W))`` and ``k = 1 + sqrt 2``.

    ``T`` is scaled to norm 1 first (``p`` is rescaled to match). The sup norm is
    taken over the hull dilated by ``1 + dilation`` about its centroid, so the
    inner approximation of ``W`` cannot make the right-hand side too small.
    """
    a = as_cmatrix(t)
    c = _check_poly(p)
    s = op_norm(a)
    if s == 0.0:
        raise EmptyInterior("T = 0 has a one-point numerical range")
    a = a / s
    c = c * s ** np.arange(c.size)
    nr = numerical_range(a, angles)
    if nr.empty_interior:
        raise EmptyInterior("numerical range has empty interior; the spectral theorem applies")
    lhs = op_norm(poly_apply(c, a))
    cen = nr.hull.centroid()
    grown = dom.affine_image(nr.hull, 1.0 + dilation, -dilation * cen)
    sup = sup_norm_boundary(c, grown, samples)
    cw = config_constant(nr.hull, c_samples).value
    k_imp = 1.0 + math.sqrt(1.0 + cw)
    ratio = lhs / sup
    tol = 1e-10
    return BoundReport(
        lhs=lhs,
        sup_norm=sup,
        c_of_W=cw,
        k_improved=k_imp,
        k_cp=K_CP,
        pass_improved=ratio <= k_imp + tol,
        pass_cp=ratio <= K_CP + tol,
        ratio=ratio,
        slack_improved=k_imp - ratio,
        slack_cp=K_CP - ratio,
    )


def random_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / math.sqrt(2 * n)


def random_poly(deg: int, rng: np.random.Generator) -> np.ndarray:
    return rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
