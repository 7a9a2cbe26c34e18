"""Curvature-type upper bounds and ellipse closed forms.

``R(zeta, sigma)`` is the radius of the circle through ``zeta`` tangent to the
boundary at ``sigma``; it satisfies ``rho_zeta(sigma) = 1 / (2 pi R)``.
``R_Omega(sigma)`` is its sup over ``zeta``, the radius of the smallest disk
tangent at ``sigma`` containing the domain, and

    c(Omega) <= 1 - (1 / 2 pi) int ds / R_Omega.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain import BoundaryPoint, ConvexDomain, Segment
from .errors import CoincidentPoints, NonPositiveAxis
from .npkernel import as_boundary_point, cross_arc_density

GOLDEN_STEPS = 60
INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CurvatureReport:
    r_omega: np.ndarray  # R_Omega at the quadrature nodes (inf allowed)
    bound: float
    mass: float
    sample_count: int


def tangent_circle_radius(d: ConvexDomain, zeta, sigma) -> float:
    zeta = as_boundary_point(d, zeta)
    sigma = as_boundary_point(d, sigma)
    diff = sigma.z - zeta.z
    if abs(diff) < 1e-14 * d.scale:
        raise CoincidentPoints("tangent circle needs zeta != sigma")
    j, t = sigma.members[-1]
    arc = d.arcs[j]
    s = zeta.member_param(j)
    if isinstance(arc, Segment) and s is not None:
        return math.inf
    der = complex(arc.deriv(t))
    normal = -1j * der / abs(der)
    den = 2.0 * (diff * normal.conjugate()).real
    if den <= 1e-14 * d.scale:
        return math.inf
    if s is not None:
        # same curved arc: the closed-form density is accurate even for close points
        return float(1.0 / (2.0 * math.pi * arc.same_arc_density(s, t)))
    return abs(diff) ** 2 / den


def _rho_matrix(d: ConvexDomain, j: int, s: np.ndarray, sig_arc: np.ndarray, sig_t: np.ndarray) -> np.ndarray:
    """``rho`` of base points on arc ``j`` (params ``s``, shape (m,)) at nodes: shape (n, m)."""
    arc = d.arcs[j]
    out = np.empty((len(sig_t), len(s)))
    for i in np.unique(sig_arc):
        rows = sig_arc == i
        tt = sig_t[rows][:, None]
        if i == j:
            out[rows] = arc.same_arc_density(s[None, :], tt)
        else:
            out[rows] = cross_arc_density(d, i, tt, j, s[None, :])
    return out


def _r_omega_nodes(d: ConvexDomain, sig_arc, sig_t, sample_count: int, refine: bool) -> np.ndarray:
    """R_Omega at boundary points given by arc indices and parameters."""
    sig_arc = np.asarray(sig_arc, dtype=int)
    sig_t = np.asarray(sig_t, dtype=float)
    base = d.base_points(sample_count)
    rho_min = np.full(len(sig_t), np.inf)
    for j, arc in enumerate(d.arcs):
        s = np.unique(np.array([p.member_param(j) for p in base if p.member_param(j) is not None]))
        s = np.unique(np.concatenate([s, [arc.t0, arc.t1]]))
        rho = _rho_matrix(d, j, s, sig_arc, sig_t)
        k = np.argmin(rho, axis=1)
        best = rho[np.arange(len(k)), k]
        if refine and len(s) > 2:
            # golden-section on the bracket around each grid minimizer
            lo = s[np.maximum(k - 1, 0)]
            hi = s[np.minimum(k + 1, len(s) - 1)]
            x1 = hi - INVPHI * (hi - lo)
            x2 = lo + INVPHI * (hi - lo)
            f1 = _rho_pointwise(d, j, x1, sig_arc, sig_t)
            f2 = _rho_pointwise(d, j, x2, sig_arc, sig_t)
            for _ in range(GOLDEN_STEPS):
                left = f1 < f2
                hi = np.where(left, x2, hi)
                lo = np.where(left, lo, x1)
                nx1 = np.where(left, hi - INVPHI * (hi - lo), x2)
                nx2 = np.where(left, x1, lo + INVPHI * (hi - lo))
                fe = _rho_pointwise(d, j, np.where(left, nx1, nx2), sig_arc, sig_t)
                f1, f2 = np.where(left, fe, f2), np.where(left, f1, fe)
                x1, x2 = nx1, nx2
            best = np.minimum(best, np.minimum(f1, f2))
        rho_min = np.minimum(rho_min, best)
    with np.errstate(divide="ignore"):
        # a zero density means zeta on the tangent line: the circle degenerates
        return np.where(rho_min > 0, 1.0 / (2.0 * math.pi * rho_min), np.inf)


def _rho_pointwise(d: ConvexDomain, j: int, s: np.ndarray, sig_arc, sig_t) -> np.ndarray:
    """``rho`` of the base point at param ``s[n]`` of arc ``j`` at node ``n``."""
    arc = d.arcs[j]
    out = np.empty(len(sig_t))
    for i in np.unique(sig_arc):
        rows = sig_arc == i
        if i == j:
            out[rows] = arc.same_arc_density(s[rows], sig_t[rows])
        else:
            out[rows] = cross_arc_density(d, i, sig_t[rows], j, s[rows])
    return out


def r_omega(d: ConvexDomain, sigma, sample_count: int = 64, refine: bool = True) -> float:
    """Lower approximation of ``sup_zeta R(zeta, sigma)``.

    The sup runs over corners, ``sample_count`` arclength samples and the limit
    ``zeta -> sigma`` (the curvature radius). With ``refine`` each sampled
    maximum is polished by a golden-section search between its neighbours.
    """
    sigma = as_boundary_point(d, sigma)
    j, t = sigma.members[-1]
    return float(_r_omega_nodes(d, [j], [t], sample_count, refine)[0])


def curvature_bound(d: ConvexDomain, sample_count: int = 64, refine: bool = True) -> CurvatureReport:
    """Quadrature of ``1 - (1/2 pi) int ds / R_Omega`` over the boundary nodes."""
    r = _r_omega_nodes(d, d.node_arc, d.node_t, sample_count, refine)
    inv = np.where(np.isinf(r), 0.0, 1.0 / np.where(np.isinf(r), 1.0, r))
    mass = float(np.sum(d.weights * inv) / (2.0 * math.pi))
    bound = min(max(1.0 - mass, 0.0), 1.0)
    return CurvatureReport(r, bound, mass, sample_count)


def _check_axes(a: float, b: float) -> None:
    if not (a > 0 and b > 0) or not (math.isfinite(a) and math.isfinite(b)):
        raise NonPositiveAxis(f"semi-axes must be positive and finite, got {a}, {b}")


def ellipse_config_constant(a: float, b: float) -> float:
    _check_axes(a, b)
    return 2.0 / math.pi * math.atan(0.5 * abs(b / a - a / b))


def ellipse_density(a: float, b: float, s, t):
    """Density in the parameter ``t`` of the kernel measure based at ``gamma(s)``.

    ``gamma(t) = (a cos t, b sin t)``; the result integrates to 1 over a period.
    """
    _check_axes(a, b)
    den = a * a + b * b
    big_a = 2.0 * a * b / den
    big_b = (b * b - a * a) / den
    return big_a / (1.0 + big_b * np.cos(np.add(t, s))) / (2.0 * math.pi)


def spectral_constant_ellipse(a: float, b: float) -> float:
    """``1 + sqrt(1 + c)`` with ``c`` the ellipse configuration constant."""
    return 1.0 + math.sqrt(1.0 + ellipse_config_constant(a, b))
