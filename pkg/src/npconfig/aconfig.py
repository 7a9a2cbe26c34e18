"""Numerical lower bounds for the analytic configuration constant.

``a(Omega)`` is the norm of ``K`` restricted to analytic functions, modulo
constants: the sup of ``||K f + C 1||`` over analytic ``f`` with ``|f| <= 1`` on
the boundary. Here ``f`` ranges over polynomials of a fixed degree and the sup
is searched with restarted Nelder-Mead, so every returned value is a lower
bound up to sampling error.

Polynomials are written in the scaled variable ``u = (z - centroid) / (R frame)``
with ``R`` the largest distance from the centroid to the boundary and ``frame``
the unit rotation carried along by similarity maps. The objective is then
invariant under similarities of the domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .domain import ConvexDomain
from .errors import ZeroPolynomial
from .mindisk import quotient_norm
from .npkernel import kernel_weights


@dataclass(frozen=True)
class AnalyticCandidate:
    coeffs: tuple  # complex coefficients in the scaled variable u
    objective: float
    center: complex
    radius: float
    frame: complex

    def __call__(self, z):
        u = (np.asarray(z, dtype=complex) - self.center) / (self.radius * self.frame)
        return np.polyval(np.asarray(self.coeffs)[::-1], u)


class AObjective:
    """Precomputed linear maps ``c -> K f`` (at base points) and ``c -> f`` (on the boundary)."""

    def __init__(self, d: ConvexDomain, degree: int, sample_count: int = 64, sup_samples: int = 512):
        if degree < 1:
            raise ValueError("degree must be at least 1")
        self.d = d
        self.degree = degree
        self.center = d.centroid()
        self.radius = float(np.max(np.abs(d.nodes - self.center)))
        self.frame = d.frame / abs(d.frame)
        base = d.base_points(sample_count)
        self.base = base
        w = np.array([kernel_weights(d, p) for p in base])
        atoms = np.array([p.atom for p in base])
        zb = np.array([p.z for p in base])
        v_nodes = self._vander(d.nodes)
        v_base = self._vander(zb)
        self.kmap = w @ v_nodes + atoms[:, None] * v_base
        bpts = [p.z for p in d.arclength_samples(sup_samples)] + [c.point for c in d.corners]
        self.sup_map = self._vander(np.concatenate([d.nodes, np.asarray(bpts, dtype=complex), zb]))

    def _vander(self, z) -> np.ndarray:
        u = (np.asarray(z, dtype=complex) - self.center) / (self.radius * self.frame)
        return np.vander(u, self.degree + 1, increasing=True)

    def sup(self, c) -> float:
        return float(np.max(np.abs(self.sup_map @ c)))

    def value(self, c) -> float:
        s = self.sup(c)
        if s == 0.0:
            return 0.0
        return quotient_norm(self.kmap @ c) / s

    def candidate(self, c) -> AnalyticCandidate:
        c = np.asarray(c, dtype=complex)
        s = self.sup(c)
        if s == 0.0:
            raise ZeroPolynomial("polynomial vanishes on the boundary samples")
        c = c / s
        return AnalyticCandidate(tuple(complex(x) for x in c), self.value(c), self.center, self.radius, self.frame)


def normalize_candidate(d: ConvexDomain, coeffs: Sequence[complex], sample_count: int = 64) -> AnalyticCandidate:
    """Scale ``coeffs`` (in the scaled variable) to boundary sup 1 and evaluate the objective."""
    c = np.asarray(coeffs, dtype=complex)
    if not np.any(c):
        raise ZeroPolynomial("all coefficients are zero")
    obj = AObjective(d, max(len(c) - 1, 1), sample_count)
    if len(c) == 1:
        c = np.concatenate([c, [0.0]])
    return obj.candidate(c)


def _to_complex(x: np.ndarray) -> np.ndarray:
    h = len(x) // 2
    return x[:h] + 1j * x[h:]


def _to_real(c: np.ndarray) -> np.ndarray:
    return np.concatenate([c.real, c.imag])


def a_lower_bound(
    d: ConvexDomain,
    degree: int = 8,
    restarts: int = 8,
    iters: int = 2000,
    seed: int = 0,
    sample_count: int = 64,
    warm_start: Optional[Sequence[complex]] = None,
    objective: Optional[AObjective] = None,
) -> dict:
    """Best ``||K f + C 1|| / ||f||`` found over degree-``degree`` polynomials.

    Deterministic for a given seed. ``warm_start`` (lower-degree coefficients
    are zero-padded) joins the starting points, which makes chained runs over
    increasing degrees non-decreasing.
    """
    obj = objective or AObjective(d, degree, sample_count)
    rng = np.random.default_rng(seed)
    starts = []
    if warm_start is not None:
        w = np.zeros(degree + 1, dtype=complex)
        ws = np.asarray(warm_start, dtype=complex)[: degree + 1]
        w[: len(ws)] = ws
        if np.any(w):
            starts.append(w)
    starts.append(np.eye(degree + 1, dtype=complex)[min(2, degree)])
    while len(starts) < restarts + (warm_start is not None):
        starts.append(rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1))

    def neg(x):
        return -obj.value(_to_complex(x))

    best_c, best_v = None, -1.0
    for c0 in starts:
        x0 = _to_real(c0 / obj.sup(c0))
        res = minimize(neg, x0, method="Nelder-Mead",
                       options={"maxfev": iters, "xatol": 1e-10, "fatol": 1e-12, "adaptive": True})
        for x in (res.x, x0):
            v = obj.value(_to_complex(x))
            if v > best_v:
                best_v, best_c = v, _to_complex(x)
    cand = obj.candidate(best_c)
    return {
        "value": cand.objective,
        "best": cand,
        "config": {
            "degree": degree,
            "restarts": restarts,
            "iters": iters,
            "seed": seed,
            "sample_count": sample_count,
            "base_points": len(obj.base),
            "sup_points": obj.sup_map.shape[0],
        },
    }
