"""Finite-dimensional side of the three-measures theorem.

For real vectors ``x, y`` and complex ``alpha, beta``

    ||alpha x + beta y||_1 <= (|alpha| + |beta| + |alpha + beta|) / 2
                              * max(||x||_1, ||y||_1, ||x - y||_1).

By homogeneity it is enough to check the extreme points of the polytope

    C_n = {(x, y) : ||x||_1 <= 1, ||y||_1 <= 1, ||x - y||_1 <= 1},

which fall into few classes under the symmetry group ``G_n`` generated by
signed coordinate permutations, ``(x, y) -> (y, x)`` and ``(x, y) -> (x, x - y)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateInput, DimensionTooLarge, NonFinite
from .mindisk import quotient_norm

SNAP_DENOMINATOR = 16
MAX_ENUM_DIM = 3


@dataclass(frozen=True)
class PairVector:
    x: tuple
    y: tuple

    @property
    def n(self) -> int:
        return len(self.x)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)

    def in_polytope(self, tol: float = 1e-12) -> bool:
        x, y = np.array(self.x), np.array(self.y)
        return max(np.abs(x).sum(), np.abs(y).sum(), np.abs(x - y).sum()) <= 1 + tol


@dataclass(frozen=True)
class FiniteMeasureSet:
    """``weights[j, i]`` is the mass that measure ``j`` puts on atom ``i``."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2:
            raise ValueError("weights must be a k x m matrix")
        if not np.all(np.isfinite(w)):
            raise NonFinite("non-finite measure weight")
        object.__setattr__(self, "weights", w)

    @property
    def k(self) -> int:
        return self.weights.shape[0]

    @property
    def m(self) -> int:
        return self.weights.shape[1]

    def images(self, f) -> np.ndarray:
        """``(mu_1(f), ..., mu_k(f))`` for one function or a stack of them (rows)."""
        return np.asarray(f) @ self.weights.T


def l1(v) -> float:
    return math.fsum(abs(c) for c in np.ravel(v))


def discrete_inequality(x, y, alpha: complex, beta: complex) -> dict:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be vectors of equal length")
    alpha, beta = complex(alpha), complex(beta)
    lhs = l1(alpha * x + beta * y)
    coef = (abs(alpha) + abs(beta) + abs(alpha + beta)) / 2.0
    rhs = coef * max(l1(x), l1(y), l1(x - y))
    return {"lhs": lhs, "rhs": rhs, "slack": rhs - lhs}


# ------------------------------------------------------------- the polytope


def _facets(n: int) -> np.ndarray:
    """Rows ``a`` of the inequalities ``a . (x, y) <= 1`` that cut out C_n."""
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=n)))
    zero = np.zeros_like(signs)
    return np.vstack([
        np.hstack([signs, zero]),
        np.hstack([zero, signs]),
        np.hstack([signs, -signs]),
    ])


def enumerate_extreme_points(n: int) -> list[PairVector]:
    """All vertices of C_n via active-set enumeration (n <= 3)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_ENUM_DIM:
        raise DimensionTooLarge(f"vertex enumeration is limited to n <= {MAX_ENUM_DIM}")
    a = _facets(n)
    dim = 2 * n
    combos = np.array(list(itertools.combinations(range(len(a)), dim)))
    mats = a[combos]
    det = np.linalg.det(mats)
    ok = np.abs(det) > 1e-9
    sols = np.linalg.solve(mats[ok], np.ones((int(ok.sum()), dim, 1)))[..., 0]
    feasible = np.all(sols @ a.T <= 1 + 1e-9, axis=1)
    pts = np.unique(np.round(sols[feasible] / 1e-10) * 1e-10, axis=0)
    out = []
    for v in pts:
        v = _snap(v)
        out.append(PairVector(tuple(map(float, v[:n])), tuple(map(float, v[n:]))))
    return out


def _snap(v: np.ndarray) -> np.ndarray:
    out = np.array(v, dtype=float)
    for i, c in enumerate(out):
        fr = Fraction(float(c)).limit_denominator(SNAP_DENOMINATOR)
        if abs(float(fr) - c) <= 1e-9:
            out[i] = float(fr)
    out[out == 0] = 0.0  # drop negative zeros
    return out


def _pair_group() -> list[np.ndarray]:
    """The 2x2 integer matrices generated by the swap and (x, y) -> (x, x - y)."""
    gens = [np.array([[0, 1], [1, 0]]), np.array([[1, 0], [1, -1]])]
    group = {(1, 0, 0, 1): np.eye(2, dtype=int)}
    frontier = list(group.values())
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                p = h @ g
                key = tuple(p.ravel())
                if key not in group:
                    group[key] = p
                    nxt.append(p)
        frontier = nxt
    return list(group.values())


PAIR_GROUP = _pair_group()


def _best_signed_permutation(x: np.ndarray, y: np.ndarray) -> tuple:
    # signed permutations act on the columns (x_i, y_i); the lexicographic max of
    # (x || y) makes every column non-negative-first and sorts columns descending
    cols = []
    for xi, yi in zip(x, y):
        if xi < 0 or (xi == 0 and yi < 0):
            xi, yi = -xi, -yi
        cols.append((float(xi) + 0.0, float(yi) + 0.0))
    cols.sort(reverse=True)
    return tuple(c[0] for c in cols) + tuple(c[1] for c in cols)


def gn_canonicalize(p: PairVector) -> PairVector:
    """Lexicographically largest element of the ``G_n`` orbit (after rational snapping).

    Exact for every n: the signed permutations are handled by sorting, so only the
    six pair transformations are enumerated.
    """
    v = _snap(np.concatenate([p.x, p.y]))
    n = len(p.x)
    xy = np.vstack([v[:n], v[n:]])
    best = None
    for g in PAIR_GROUP:
        img = g @ xy
        cand = _best_signed_permutation(_snap(img[0]), _snap(img[1]))
        if best is None or cand > best:
            best = cand
    return PairVector(best[:n], best[n:])


def class_representatives(n: int) -> list[PairVector]:
    """Canonical forms of the displayed extreme-point classes whose support fits in n coordinates."""
    e = np.eye(max(n, 3))
    reps = [(e[0], e[0]), (e[0], (e[0] + e[1]) / 2), ((e[0] + e[1]) / 2, (e[0] + e[2]) / 2)]
    out = []
    for x, y in reps:
        if np.any(x[n:]) or np.any(y[n:]):
            continue
        out.append(gn_canonicalize(PairVector(tuple(x[:n]), tuple(y[:n]))))
    return out


def polytope_census(n: int) -> dict:
    """Vertex count and the distinct canonical classes of C_n."""
    verts = enumerate_extreme_points(n)
    classes: dict = {}
    for v in verts:
        c = gn_canonicalize(v)
        classes[c] = classes.get(c, 0) + 1
    reps = sorted(classes, key=lambda c: (c.x, c.y), reverse=True)
    return {
        "n": n,
        "vertex_count": len(verts),
        "classes": [{"x": list(c.x), "y": list(c.y), "orbit_size": classes[c]} for c in reps],
    }


# ---------------------------------------------------------------- n measures


def n_measures_norm(ms: FiniteMeasureSet) -> float:
    """``max_{j,k} ||mu_j - mu_k|| / 2``."""
    if ms.k < 2:
        raise DegenerateInput("need at least two measures")
    w = ms.weights
    diff = np.abs(w[:, None, :] - w[None, :, :]).sum(axis=2)
    return float(diff.max() / 2.0)


def alignment_function(ms: FiniteMeasureSet) -> np.ndarray:
    """Sign vector of ``mu_j - mu_k`` for a pair at maximal distance."""
    w = ms.weights
    diff = np.abs(w[:, None, :] - w[None, :, :]).sum(axis=2)
    j, k = np.unravel_index(int(np.argmax(diff)), diff.shape)
    f = np.sign(w[j] - w[k])
    f[f == 0] = 1.0
    return f


def verify_image_radius(ms: FiniteMeasureSet, trials: int = 1000, seed: int = 0) -> dict:
    """Largest ``quotient_norm({mu_j(f)}) / norm`` over test functions with ``|f| <= 1``.

    The test set holds ``trials`` random unimodular vectors, as many random
    vectors from the closed unit disk, every sign vector when ``m <= 12`` and the
    alignment vector of the farthest pair.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    norm = n_measures_norm(ms)
    rng = np.random.default_rng(seed)
    m = ms.m
    fs = [np.exp(1j * rng.uniform(0, 2 * np.pi, size=(trials, m)))]
    rad = np.sqrt(rng.uniform(0, 1, size=(trials, m)))
    fs.append(rad * np.exp(1j * rng.uniform(0, 2 * np.pi, size=(trials, m))))
    if m <= 12:
        fs.append(np.array(list(itertools.product((1.0, -1.0), repeat=m))))
    align = alignment_function(ms)
    fs.append(align[None, :])
    f_all = np.vstack([np.asarray(f, dtype=complex) for f in fs])
    imgs = ms.images(f_all)
    radii = np.array([quotient_norm(row) for row in imgs])
    if norm == 0.0:
        return {"max_ratio": 0.0, "alignment_ratio": 0.0, "norm": 0.0, "tested": len(radii)}
    ratios = radii / norm
    return {
        "max_ratio": float(ratios.max()),
        "alignment_ratio": float(ratios[-1]),
        "norm": norm,
        "tested": len(radii),
    }
