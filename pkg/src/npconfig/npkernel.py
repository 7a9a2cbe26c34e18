"""The Neumann-Poincare kernel of a convex domain.

For a boundary point ``zeta`` the kernel measure is

    mu_zeta = (1 - theta_zeta / pi) delta_zeta + rho_zeta ds,
    rho_zeta(sigma) = Re(N(sigma) / (sigma - zeta)) / pi,

a probability measure. ``K f(zeta)`` integrates ``f`` against it and the
configuration constant is half the largest total-variation distance between two
such measures.

Total-variation distances are computed piecewise-exactly: the mass that
``rho_zeta ds`` gives to a boundary piece not containing ``zeta`` equals the
angle the piece subtends at ``zeta``, divided by pi. Splitting every arc at the
points where the two densities cross turns ``int |rho_1 - rho_2| ds`` into a
finite sum of such angle differences. Crossings on straight edges solve a
quadratic; on curved arcs they are bracketed on the quadrature grid and refined
with Brent's method.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .domain import BoundaryPoint, ConvexDomain, EllipticArc, Segment, gauss_legendre
from .errors import CoincidentPoints, NotInterior, SampleMismatch

PI = math.pi
MAX_REFINE_DEPTH = 60
LEAF_NODES = 16


# ------------------------------------------------------------------ densities


def _chord_density(arc, t, diff) -> np.ndarray:
    """``rho`` at ``arc.point(t)`` given the chord ``diff = sigma - zeta``."""
    der = arc.deriv(t)
    normal = -1j * der / np.abs(der)
    num = (normal * np.conj(diff)).real
    return num / (PI * np.abs(diff) ** 2)


def _generic_density(arc, t, z: complex) -> np.ndarray:
    return _chord_density(arc, t, arc.point(t) - z)


def cross_arc_density(d: ConvexDomain, j: int, t, m: int, s) -> np.ndarray:
    """Density at ``gamma_j(t)`` of the measure based at ``gamma_m(s)``, ``m != j``."""
    return _chord_density(d.arcs[j], t, d.chord(j, t, m, s))


def density_on_arc(d: ConvexDomain, zeta: BoundaryPoint, j: int, t) -> np.ndarray:
    """Density of ``mu_zeta`` (per unit arclength) at parameters ``t`` of arc ``j``."""
    arc = d.arcs[j]
    s = zeta.member_param(j)
    if s is not None:
        return arc.same_arc_density(s, t)
    m, sm = zeta.members[0]
    out = cross_arc_density(d, j, t, m, sm)
    if isinstance(arc, Segment):
        # constant sign along an edge; clip rounding noise of a touching line
        out = np.maximum(out, 0.0)
    return out


def density_at_nodes(d: ConvexDomain, zeta: BoundaryPoint) -> np.ndarray:
    out = np.empty(d.n_nodes)
    for j in range(len(d.arcs)):
        m = d.node_arc == j
        out[m] = density_on_arc(d, zeta, j, d.node_t[m])
    return out


def as_boundary_point(d: ConvexDomain, zeta) -> BoundaryPoint:
    if isinstance(zeta, BoundaryPoint):
        return zeta
    if isinstance(zeta, (int, np.integer)):
        return d.node_point(int(zeta))
    return d.locate(complex(zeta))


def density(d: ConvexDomain, zeta, sigma) -> float:
    """``rho_zeta(sigma)`` for a quadrature node ``sigma`` (index or BoundaryPoint).

    Equals ``1 / (2 pi R)`` with ``R`` the radius of the circle through ``zeta``
    tangent to the boundary at ``sigma``.
    """
    zeta = as_boundary_point(d, zeta)
    sigma = as_boundary_point(d, sigma)
    if abs(sigma.z - zeta.z) < 1e-14 * d.scale:
        raise CoincidentPoints("density needs sigma != zeta")
    j, t = sigma.members[-1]
    return float(density_on_arc(d, zeta, j, np.array([t]))[0])


# ------------------------------------------------- near-field product weights


def _barycentric_matrix(x_nodes: np.ndarray, x_eval: np.ndarray) -> np.ndarray:
    """Lagrange basis of ``x_nodes`` evaluated at ``x_eval``: shape (len(x_eval), n)."""
    n = len(x_nodes)
    diff = x_nodes[:, None] - x_nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    lam = 1.0 / np.prod(diff, axis=1)
    dx = x_eval[:, None] - x_nodes[None, :]
    exact = dx == 0
    dx[exact] = 1.0
    terms = lam[None, :] / dx
    mat = terms / terms.sum(axis=1, keepdims=True)
    hit = exact.any(axis=1)
    if np.any(hit):
        mat[hit] = exact[hit].astype(float)
    return mat


def _panel_geometry(d: ConvexDomain):
    geo = getattr(d, "_panel_geo", None)
    if geo is None:
        tab = d.panel_table
        ends_a = np.array([complex(d.arcs[j].point(ta)) for j, ta, tb, *_ in tab])
        ends_b = np.array([complex(d.arcs[j].point(tb)) for j, ta, tb, *_ in tab])
        lengths = np.array([d.weights[i0:i1].sum() for _, _, _, i0, i1, _ in tab])
        mids = np.array([complex(d.arcs[j].point(0.5 * (ta + tb))) for j, ta, tb, *_ in tab])
        geo = (ends_a, ends_b, mids, lengths)
        d._panel_geo = geo
    return geo


def _refined_weights(d: ConvexDomain, panel: int, z: complex, dens) -> np.ndarray:
    """Product-integration weights ``int rho l_i ds`` on one panel.

    ``l_i`` are the Lagrange polynomials of the panel nodes (in the arc
    parameter) and ``dens(t)`` the density. The panel is bisected towards ``z``
    until every leaf is at least its own chord length away from ``z``.
    """
    j, ta, tb, i0, i1, _ = d.panel_table[panel]
    arc = d.arcs[j]
    leaves = []
    stack = [(ta, tb, 0)]
    while stack:
        u0, u1, depth = stack.pop()
        pts = arc.point(np.array([u0, 0.5 * (u0 + u1), u1]))
        chord = abs(pts[2] - pts[0])
        if depth >= MAX_REFINE_DEPTH or np.min(np.abs(pts - z)) >= chord:
            leaves.append((u0, u1))
        else:
            um = 0.5 * (u0 + u1)
            stack.append((u0, um, depth + 1))
            stack.append((um, u1, depth + 1))
    x, w = gauss_legendre(LEAF_NODES)
    lv = np.array(leaves)
    half = 0.5 * (lv[:, 1] - lv[:, 0])
    uu = (0.5 * (lv[:, 0] + lv[:, 1]))[:, None] + half[:, None] * x[None, :]
    ww = half[:, None] * w[None, :] * np.abs(arc.deriv(uu))
    vals = (dens(uu.ravel()) * ww.ravel())
    basis = _barycentric_matrix(d.node_t[i0:i1], uu.ravel())
    return vals @ basis


def _near_panels(d: ConvexDomain, z: complex, skip_arcs: set) -> list[int]:
    a, b, mids, lengths = _panel_geometry(d)
    dist = np.minimum(np.minimum(np.abs(a - z), np.abs(b - z)), np.abs(mids - z))
    near = np.nonzero(dist < 1.5 * lengths)[0]
    return [int(p) for p in near if d.panel_table[p][0] not in skip_arcs]


def kernel_weights(d: ConvexDomain, zeta: BoundaryPoint) -> np.ndarray:
    """Weights ``W`` with ``sum W_i f(sigma_i) ~ int f rho_zeta ds`` for smooth ``f``."""
    rho = density_at_nodes(d, zeta)
    wts = d.weights * rho
    members = {j for j, _ in zeta.members}
    for p in _near_panels(d, zeta.z, members):
        j = d.panel_table[p][0]
        i0, i1 = d.panel_table[p][3], d.panel_table[p][4]
        wts[i0:i1] = _refined_weights(
            d, p, zeta.z, lambda t, j=j: density_on_arc(d, zeta, j, t)
        )
    return wts


def interior_weights(d: ConvexDomain, z: complex) -> np.ndarray:
    """Weights for ``mu_z`` at an interior point (total mass 2)."""
    wts = np.empty(d.n_nodes)
    for j, arc in enumerate(d.arcs):
        m = d.node_arc == j
        wts[m] = d.weights[m] * _generic_density(arc, d.node_t[m], z)
    for p in _near_panels(d, z, set()):
        j = d.panel_table[p][0]
        i0, i1 = d.panel_table[p][3], d.panel_table[p][4]
        wts[i0:i1] = _refined_weights(
            d, p, z, lambda t, arc=d.arcs[j]: _generic_density(arc, t, z)
        )
    return wts


# ------------------------------------------------------------------ measures


@dataclass(frozen=True)
class BoundaryMeasure:
    base: BoundaryPoint
    atom_mass: float
    density: np.ndarray  # rho_zeta at the quadrature nodes
    weights: np.ndarray  # quadrature weights for integrating against rho_zeta ds

    @property
    def total_mass(self) -> float:
        return float(self.atom_mass + np.sum(self.weights))


def measure(d: ConvexDomain, zeta) -> BoundaryMeasure:
    """Kernel measure ``mu_zeta``; ``zeta`` is a BoundaryPoint, a node index or a point."""
    zeta = as_boundary_point(d, zeta)
    return BoundaryMeasure(zeta, zeta.atom, density_at_nodes(d, zeta), kernel_weights(d, zeta))


def _split_samples(d: ConvexDomain, f) -> tuple[np.ndarray, np.ndarray]:
    f = np.asarray(f, dtype=complex)
    n, c = d.n_nodes, len(d.corners)
    if f.ndim != 1 or len(f) != n + c:
        raise SampleMismatch(f"expected {n} node values followed by {c} corner values, got {f.shape}")
    return f[:n], f[n:]


def sample_function(d: ConvexDomain, func) -> np.ndarray:
    """Sample a vectorized callable at the nodes and then the corners."""
    pts = np.concatenate([d.nodes, np.array([c.point for c in d.corners], dtype=complex)])
    return np.asarray(func(pts), dtype=complex) * np.ones(len(pts))


def apply_K(d: ConvexDomain, f, zeta) -> complex:
    """``K f(zeta) = atom f(zeta) + int f rho_zeta ds``.

    ``f`` holds values at all quadrature nodes followed by values at all corners.
    """
    fn, fc = _split_samples(d, f)
    zeta = as_boundary_point(d, zeta)
    val = complex(np.dot(kernel_weights(d, zeta), fn))
    if zeta.atom > 0:
        val += zeta.atom * complex(fc[zeta.corner])
    return val


def interior_measure_checks(d: ConvexDomain, z: complex, f) -> dict:
    """Mass and ``int f dmu_z`` of the interior measure at ``z``."""
    z = complex(z)
    if not d.contains(z) or d.distance_to_boundary(z) <= 1e-6 * d.scale:
        raise NotInterior(f"{z} is not strictly inside the domain")
    fn, _ = _split_samples(d, f)
    w = interior_weights(d, z)
    return {"mass": float(np.sum(w)), "value": complex(np.dot(w, fn))}


# ----------------------------------------------------------- total variation


def _subtended(pts: np.ndarray, z) -> np.ndarray:
    """Angles subtended at ``z`` by consecutive pieces ``pts[..., k:k+2]``."""
    return np.angle((pts[..., 1:] - z) / (pts[..., :-1] - z))


class KernelTable:
    """Precomputed per-arc data for a fixed list of base points.

    Pairwise total-variation distances reuse the table, so a sweep over all
    pairs costs one pass of density evaluation per base point.
    """

    def __init__(self, d: ConvexDomain, points: Sequence[BoundaryPoint]):
        self.d = d
        self.points = list(points)
        self.z = np.array([p.z for p in self.points], dtype=complex)
        self.atoms = np.array([p.atom for p in self.points])
        seg = [j for j, a in enumerate(d.arcs) if isinstance(a, Segment)]
        self.seg_ids = seg
        self.seg_p = np.array([d.arcs[j].p for j in seg], dtype=complex)
        self.seg_q = np.array([d.arcs[j].q for j in seg], dtype=complex)
        # distance from each base point to each edge line; zero on the edge itself
        if seg:
            dv = self.seg_q - self.seg_p
            cr = ((np.conj(dv)[None, :] * (self.z[:, None] - self.seg_p[None, :])).imag) / np.abs(dv)[None, :]
            cr = np.maximum(cr, 0.0)
            for b, pt in enumerate(self.points):
                for j, _ in pt.members:
                    if j in seg:
                        cr[b, seg.index(j)] = 0.0
            self.seg_dist = cr
        self.curved = [self._curved_data(j) for j, a in enumerate(d.arcs) if isinstance(a, EllipticArc)]

    def _curved_data(self, j: int) -> dict:
        d = self.d
        arc = d.arcs[j]
        rows = [r for r in d.panel_table if r[0] == j]
        edges = np.array([r[1] for r in rows] + [rows[-1][2]])
        grid = np.sort(np.concatenate([edges, d.node_t[d.node_arc == j]]))
        dens = np.array([density_on_arc(d, p, j, grid) for p in self.points])
        masses = np.array([self._piece_masses(p, j, edges) for p in self.points])
        return {"arc": j, "edges": edges, "grid": grid, "dens": dens, "masses": masses}

    def _piece_masses(self, pt: BoundaryPoint, j: int, breaks: np.ndarray) -> np.ndarray:
        arc = self.d.arcs[j]
        s = pt.member_param(j)
        if s is None:
            return _subtended(arc.point(breaks), pt.z) / PI
        x, w = gauss_legendre(LEAF_NODES)
        half = 0.5 * np.diff(breaks)
        tt = (0.5 * (breaks[1:] + breaks[:-1]))[:, None] + half[:, None] * x[None, :]
        vals = arc.same_arc_density(s, tt) * np.abs(arc.deriv(tt))
        return np.sum(half[:, None] * w[None, :] * vals, axis=1)

    def _curved_tv(self, cd: dict, i: int, k: int) -> float:
        j = cd["arc"]
        grid = cd["grid"]
        delta = cd["dens"][i] - cd["dens"][k]
        sgn = np.sign(delta)
        flips = np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]
        diff = np.abs(cd["masses"][i] - cd["masses"][k])
        if len(flips) == 0:
            return float(np.sum(diff))
        pi_, pk = self.points[i], self.points[k]

        def f(t):
            return float(density_on_arc(self.d, pi_, j, np.array([t]))[0] - density_on_arc(self.d, pk, j, np.array([t]))[0])

        roots = np.array([brentq(f, grid[m], grid[m + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps) for m in flips])
        edges = cd["edges"]
        owner = np.clip(np.searchsorted(edges, roots, side="right") - 1, 0, len(edges) - 2)
        total = float(np.sum(np.delete(diff, np.unique(owner))))
        for p in np.unique(owner):
            br = np.concatenate([[edges[p]], np.sort(roots[owner == p]), [edges[p + 1]]])
            total += float(np.sum(np.abs(self._piece_masses(pi_, j, br) - self._piece_masses(pk, j, br))))
        return total

    def tv_row(self, i: int, ks: Sequence[int]) -> np.ndarray:
        """Distances ``||mu_i - mu_k||`` for every ``k`` in ``ks``."""
        ks = np.asarray(ks, dtype=int)
        out = np.zeros(len(ks))
        if len(ks) == 0:
            return out
        if self.seg_ids:
            out += _segments_rows(self, i, ks)
        for cd in self.curved:
            out += np.array([self._curved_tv(cd, i, int(k)) for k in ks])
        same = np.abs(self.z[ks] - self.z[i]) <= 1e-14 * self.d.scale
        out += self.atoms[i] + self.atoms[ks]
        out[same] = 0.0
        return out


def _segments_rows(tab: KernelTable, i: int, ks: np.ndarray) -> np.ndarray:
    p = np.broadcast_to(tab.seg_p[None, :], (len(ks), len(tab.seg_p)))
    q = np.broadcast_to(tab.seg_q[None, :], p.shape)
    z1 = np.full(p.shape, tab.z[i])
    d1 = np.broadcast_to(tab.seg_dist[i][None, :], p.shape)
    z2 = np.broadcast_to(tab.z[ks][:, None], p.shape)
    d2 = tab.seg_dist[ks]
    return _segments_tv_flat(p, q, z1, d1, z2, d2)


def _segments_tv_flat(p, q, z1, d1, z2, d2) -> np.ndarray:
    """Row sums of the exact per-edge TV integrals; all inputs share one 2-D shape."""
    dv = q - p
    l2 = np.abs(dv) ** 2
    a1, a2 = p - z1, p - z2
    qa = (d1 - d2) * l2
    qb = 2.0 * (d1 * (dv * np.conj(a2)).real - d2 * (dv * np.conj(a1)).real)
    qc = d1 * np.abs(a2) ** 2 - d2 * np.abs(a1) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        disc = qb * qb - 4.0 * qa * qc
        sq = np.sqrt(np.maximum(disc, 0.0))
        qq = -0.5 * (qb + np.where(qb >= 0, sq, -sq))
        lin = np.abs(qa) <= 1e-14 * (np.abs(qb) + np.abs(qc))
        r1 = np.where(lin, -qc / qb, qq / qa)
        r2 = np.where(lin, np.nan, qc / qq)
    ok = disc >= 0
    r1 = np.where(ok & np.isfinite(r1) & (r1 > 0) & (r1 < 1), r1, 0.0)
    r2 = np.where(ok & np.isfinite(r2) & (r2 > 0) & (r2 < 1), r2, 0.0)
    u = np.sort(np.stack([np.zeros(p.shape), r1, r2, np.ones(p.shape)], axis=-1), axis=-1)
    pts = p[..., None] + u * dv[..., None]
    with np.errstate(divide="ignore", invalid="ignore"):
        m1 = np.where(d1[..., None] > 0, np.nan_to_num(_subtended(pts, z1[..., None])), 0.0)
        m2 = np.where(d2[..., None] > 0, np.nan_to_num(_subtended(pts, z2[..., None])), 0.0)
    return np.sum(np.abs(m1 - m2), axis=(-2, -1)) / PI


def tv_distance(d: ConvexDomain, zeta1, zeta2) -> float:
    """Total-variation distance ``||mu_zeta1 - mu_zeta2||`` in [0, 2]."""
    z1 = as_boundary_point(d, zeta1)
    z2 = as_boundary_point(d, zeta2)
    if abs(z1.z - z2.z) <= 1e-14 * d.scale:
        return 0.0
    # fixed order so the result is symmetric bit for bit
    if z2.key() < z1.key():
        z1, z2 = z2, z1
    tab = KernelTable(d, [z1, z2])
    return float(tab.tv_row(0, [1])[0])


@dataclass(frozen=True)
class ConfigResult:
    value: float
    witness: tuple  # (BoundaryPoint, BoundaryPoint)
    sample_count: int
    base_count: int


def config_constant(d: ConvexDomain, sample_count: int = 64) -> ConfigResult:
    """Lower approximation of ``c(Omega) = sup ||mu_zeta - mu_zeta'|| / 2``.

    The sup runs over all corners plus ``sample_count`` equal-arclength points;
    doubling ``sample_count`` refines the grid, so the value never decreases.
    """
    if sample_count < 8:
        raise ValueError("sample_count must be at least 8")
    pts = d.base_points(sample_count)
    tab = KernelTable(d, pts)
    best, wit = -1.0, (0, 0)
    for i in range(len(pts) - 1):
        ks = np.arange(i + 1, len(pts))
        row = tab.tv_row(i, ks)
        k = int(np.argmax(row))
        if row[k] > best:
            best, wit = float(row[k]), (i, int(ks[k]))
    value = min(max(best / 2.0, 0.0), 1.0)
    return ConfigResult(value, (pts[wit[0]], pts[wit[1]]), sample_count, len(pts))


def pairwise_tv(d: ConvexDomain, points: Sequence[BoundaryPoint]) -> np.ndarray:
    """Symmetric matrix of total-variation distances between the given base points."""
    tab = KernelTable(d, points)
    m = len(points)
    out = np.zeros((m, m))
    for i in range(m - 1):
        ks = np.arange(i + 1, m)
        out[i, ks] = tab.tv_row(i, ks)
        out[ks, i] = out[i, ks]
    return out
