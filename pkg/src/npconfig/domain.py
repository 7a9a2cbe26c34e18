"""Geometric model of a compact convex planar domain.

The boundary is stored as a counter-clockwise chain of smooth arcs. Two arc
types cover every supported kind: straight :class:`Segment` pieces and
:class:`EllipticArc` pieces (circles are ellipses with equal axes). Corners sit
at arc junctions, so they are always panel endpoints and never interior
quadrature nodes. Each arc is split into Gauss-Legendre panels, geometrically
graded towards corners.

Points are complex numbers throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateDomain, NonConvex, OffBoundary

PANELS_PER_ARC = 64
NODES_PER_PANEL = 8
GRADING_LEVELS = 12

TWO_PI = 2.0 * math.pi


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _cross(u: complex, v: complex) -> float:
    return u.real * v.imag - u.imag * v.real


# --------------------------------------------------------------------------- arcs


@dataclass(frozen=True)
class Segment:
    """Straight piece ``p + t (q - p)``, ``t`` in [0, 1]."""

    p: complex
    q: complex
    t0: float = 0.0
    t1: float = 1.0

    def point(self, t):
        return self.p + np.asarray(t) * (self.q - self.p)

    def deriv(self, t):
        return np.full(np.shape(t), self.q - self.p, dtype=complex)

    def curvature(self, t):
        return np.zeros(np.shape(t))

    def same_arc_density(self, s, t):
        # a base point on the segment lies on every tangent line of the segment
        return np.zeros(np.broadcast(np.asarray(s), np.asarray(t)).shape)

    def length(self, t0=None, t1=None) -> float:
        t0 = self.t0 if t0 is None else t0
        t1 = self.t1 if t1 is None else t1
        return abs(self.q - self.p) * (t1 - t0)

    def param_at_length(self, ell: float) -> float:
        return min(max(ell / abs(self.q - self.p), 0.0), 1.0)

    def image(self, alpha: complex, beta: complex) -> "Segment":
        return Segment(alpha * self.p + beta, alpha * self.q + beta)

    def offset(self, t, t_ref):
        """``point(t) - point(t_ref)`` without cancellation."""
        return (np.asarray(t, dtype=float) - t_ref) * (self.q - self.p)

    def closest_param(self, z: complex) -> float:
        d = self.q - self.p
        t = ((z - self.p) * np.conj(d)).real / abs(d) ** 2
        return float(min(max(t, 0.0), 1.0))


@dataclass(frozen=True)
class EllipticArc:
    """``center + rot (a cos t + i b sin t)`` for ``t`` in [t0, t1].

    ``rot`` is a unit complex number; ``a == b`` gives a circular arc.
    """

    center: complex
    a: float
    b: float
    rot: complex
    t0: float
    t1: float

    def point(self, t):
        t = np.asarray(t, dtype=float)
        return self.center + self.rot * (self.a * np.cos(t) + 1j * self.b * np.sin(t))

    def deriv(self, t):
        t = np.asarray(t, dtype=float)
        return self.rot * (-self.a * np.sin(t) + 1j * self.b * np.cos(t))

    def speed(self, t):
        t = np.asarray(t, dtype=float)
        return np.hypot(self.a * np.sin(t), self.b * np.cos(t))

    def curvature(self, t):
        return self.a * self.b / self.speed(t) ** 3

    def same_arc_density(self, s, t):
        """Density at gamma(t) of the kernel measure based at gamma(s).

        Closed form ``A / (2 pi (1 + B cos(t + s)))`` per unit parameter, with
        ``A = 2ab/(a^2+b^2)``, ``B = (b^2-a^2)/(a^2+b^2)``, divided by the speed
        to convert to arclength. Free of the cancellation that the generic
        formula suffers when ``t`` is close to ``s``.
        """
        a2, b2 = self.a**2, self.b**2
        s = np.asarray(s, dtype=float)
        t = np.asarray(t, dtype=float)
        per_param = (2.0 * self.a * self.b) / ((a2 + b2) + (b2 - a2) * np.cos(t + s)) / TWO_PI
        return per_param / self.speed(t)

    def length(self, t0=None, t1=None) -> float:
        t0 = self.t0 if t0 is None else t0
        t1 = self.t1 if t1 is None else t1
        if self.a == self.b:
            return self.a * (t1 - t0)
        if t1 <= t0:
            return 0.0
        m = max(1, int(math.ceil((t1 - t0) / (math.pi / 16))))
        x, w = gauss_legendre(16)
        edges = np.linspace(t0, t1, m + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        tt = mid[:, None] + half[:, None] * x[None, :]
        return float(np.sum(half[:, None] * w[None, :] * self.speed(tt)))

    def param_at_length(self, ell: float) -> float:
        if self.a == self.b:
            return self.t0 + ell / self.a
        total = self.length()
        ell = min(max(ell, 0.0), total)
        t = self.t0 + (self.t1 - self.t0) * ell / total
        for _ in range(50):
            step = (self.length(self.t0, t) - ell) / float(self.speed(t))
            t = min(max(t - step, self.t0), self.t1)
            if abs(step) < 1e-15 * (1.0 + abs(t)):
                break
        return t

    def image(self, alpha: complex, beta: complex) -> "EllipticArc":
        mag = abs(alpha)
        return EllipticArc(
            alpha * self.center + beta,
            self.a * mag,
            self.b * mag,
            self.rot * alpha / mag,
            self.t0,
            self.t1,
        )

    def offset(self, t, t_ref):
        """``point(t) - point(t_ref)`` via sum-to-product, accurate for close parameters."""
        t = np.asarray(t, dtype=float)
        half = 0.5 * (t - t_ref)
        mid = 0.5 * (t + t_ref)
        sh = np.sin(half)
        return self.rot * (-2.0 * self.a * np.sin(mid) * sh + 2j * self.b * np.cos(mid) * sh)

    def closest_param(self, z: complex) -> float:
        span = self.t1 - self.t0
        periodic = abs(span - TWO_PI) <= 1e-12
        ts = np.linspace(self.t0, self.t1, 257)
        h = ts[1] - ts[0]
        k = int(np.argmin(np.abs(self.point(ts) - z)))
        if periodic:
            lo, hi = ts[k] - h, ts[k] + h
        else:
            lo, hi = ts[max(k - 1, 0)], ts[min(k + 1, len(ts) - 1)]

        def g(t):
            return float((np.conj(self.deriv(t)) * (self.point(t) - z)).real)

        glo, ghi = g(lo), g(hi)
        if glo <= 0.0 <= ghi and glo < ghi:
            # orthogonality root; far more accurate than minimizing the distance
            t = float(brentq(g, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps))
        else:
            t = lo if abs(complex(self.point(lo)) - z) <= abs(complex(self.point(hi)) - z) else hi
        if periodic:
            t = self.t0 + (t - self.t0) % TWO_PI
        return float(min(max(t, self.t0), self.t1))


Arc = Segment | EllipticArc


# ------------------------------------------------------------------ point types


@dataclass(frozen=True)
class Corner:
    point: complex
    theta: float  # aperture, in (0, pi)
    index: int  # arc junction index: end of arc index-1, start of arc index


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of the boundary together with the arcs it belongs to.

    ``members`` lists ``(arc_index, t)``; a corner belongs to both adjacent
    arcs. ``theta`` is the aperture (pi at smooth points).
    """

    z: complex
    members: tuple[tuple[int, float], ...]
    theta: float = math.pi
    corner: Optional[int] = None
    node: Optional[int] = None

    @property
    def atom(self) -> float:
        return 1.0 - self.theta / math.pi

    def member_param(self, arc: int) -> Optional[float]:
        for j, t in self.members:
            if j == arc:
                return t
        return None

    def key(self) -> tuple:
        return (self.z.real, self.z.imag)


@dataclass(frozen=True)
class QuadPanel:
    arc: int
    ta: float
    tb: float
    nodes: np.ndarray
    weights: np.ndarray
    tangents: np.ndarray
    normals: np.ndarray
    smooth: bool  # False when a corner sits at one of the panel ends


# ------------------------------------------------------------------ the domain


@dataclass(eq=False)
class ConvexDomain:
    kind: str
    params: dict
    arcs: tuple
    panels_per_arc: int = PANELS_PER_ARC
    nodes_per_panel: int = NODES_PER_PANEL
    grading_levels: int = GRADING_LEVELS
    frame: complex = 1.0 + 0.0j
    corners: list = field(init=False)
    # flattened quadrature data
    nodes: np.ndarray = field(init=False)
    weights: np.ndarray = field(init=False)
    tangents: np.ndarray = field(init=False)
    normals: np.ndarray = field(init=False)
    node_arc: np.ndarray = field(init=False)
    node_t: np.ndarray = field(init=False)
    node_panel: np.ndarray = field(init=False)
    panel_table: list = field(init=False)

    def __post_init__(self):
        self.corners = _find_corners(self.arcs)
        self._build_panels()
        self.arc_lengths = np.array([arc.length() for arc in self.arcs])
        self.arc_offsets = np.concatenate([[0.0], np.cumsum(self.arc_lengths)])
        self.scale = float(2.0 * np.max(np.abs(self.nodes - self.nodes.mean())))

    # -- construction helpers
    def _build_panels(self):
        x, w = gauss_legendre(self.nodes_per_panel)
        corner_junctions = {c.index for c in self.corners}
        narcs = len(self.arcs)
        zs, ws, ts_all, arc_ids, tparams, panel_ids = [], [], [], [], [], []
        table = []
        for j, arc in enumerate(self.arcs):
            edges = list(np.linspace(arc.t0, arc.t1, self.panels_per_arc + 1))
            h = edges[1] - edges[0]
            start_corner = j in corner_junctions
            end_corner = ((j + 1) % narcs) in corner_junctions
            if start_corner and self.grading_levels > 0:
                extra = [arc.t0 + h * 2.0**-k for k in range(self.grading_levels, 0, -1)]
                edges = [edges[0]] + extra + edges[1:]
            if end_corner and self.grading_levels > 0:
                extra = [arc.t1 - h * 2.0**-k for k in range(1, self.grading_levels + 1)]
                edges = edges[:-1] + extra + [edges[-1]]
            edges = np.array(edges)
            for k in range(len(edges) - 1):
                ta, tb = edges[k], edges[k + 1]
                half = 0.5 * (tb - ta)
                tt = 0.5 * (ta + tb) + half * x
                der = arc.deriv(tt)
                sp = np.abs(der)
                start = sum(len(a) for a in zs)
                zs.append(arc.point(tt))
                ws.append(half * w * sp)
                ts_all.append(der / sp)
                arc_ids.append(np.full(len(tt), j))
                tparams.append(tt)
                panel_ids.append(np.full(len(tt), len(table)))
                smooth = not ((k == 0 and start_corner) or (k == len(edges) - 2 and end_corner))
                table.append((j, float(ta), float(tb), start, start + len(tt), smooth))
        self.nodes = np.concatenate(zs)
        self.weights = np.concatenate(ws)
        self.tangents = np.concatenate(ts_all)
        self.normals = -1j * self.tangents
        self.node_arc = np.concatenate(arc_ids)
        self.node_t = np.concatenate(tparams)
        self.node_panel = np.concatenate(panel_ids)
        self.panel_table = table

    # -- basic geometry
    @property
    def perimeter(self) -> float:
        return float(np.sum(self.weights))

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def panels(self) -> list[QuadPanel]:
        out = []
        for j, ta, tb, i0, i1, smooth in self.panel_table:
            out.append(
                QuadPanel(
                    j, ta, tb,
                    self.nodes[i0:i1], self.weights[i0:i1],
                    self.tangents[i0:i1], self.normals[i0:i1], smooth,
                )
            )
        return out

    def area(self) -> float:
        return float(0.5 * np.sum(self.weights * (np.conj(self.nodes) * self.tangents).imag))

    def centroid(self) -> complex:
        a = self.area()
        x, y = self.nodes.real, self.nodes.imag
        cx = np.sum(self.weights * x * x * self.tangents.imag) / (2 * a)
        cy = -np.sum(self.weights * y * y * self.tangents.real) / (2 * a)
        return complex(cx, cy)

    def total_turning(self) -> float:
        """Sum of corner turns plus integrated curvature (2 pi for a convex curve)."""
        kappa = np.empty(self.n_nodes)
        for j, arc in enumerate(self.arcs):
            m = self.node_arc == j
            kappa[m] = arc.curvature(self.node_t[m])
        return float(sum(math.pi - c.theta for c in self.corners) + np.sum(self.weights * kappa))

    def chord(self, i: int, t, j: int, s):
        """``gamma_i(t) - gamma_j(s)``, measured from a shared junction when arcs touch.

        Near a junction the plain difference of two points loses every digit
        that the chord does not share with the junction coordinates.
        """
        n = len(self.arcs)
        ai, aj = self.arcs[i], self.arcs[j]
        t = np.asarray(t, dtype=float)
        s = np.asarray(s, dtype=float)
        if i == j:
            return ai.offset(t, s)
        nxt = j == (i + 1) % n  # end of arc i is the start of arc j
        prv = i == (j + 1) % n  # start of arc i is the end of arc j
        via_end = ai.offset(t, ai.t1) - aj.offset(s, aj.t0) if nxt else None
        via_start = ai.offset(t, ai.t0) - aj.offset(s, aj.t1) if prv else None
        if nxt and prv:
            near_end = np.abs(ai.t1 - t) < np.abs(t - ai.t0)
            return np.where(near_end, via_end, via_start)
        if nxt:
            return via_end
        if prv:
            return via_start
        return ai.point(t) - aj.point(s)

    # -- boundary points
    def node_point(self, i: int) -> BoundaryPoint:
        return BoundaryPoint(
            complex(self.nodes[i]),
            ((int(self.node_arc[i]), float(self.node_t[i])),),
            node=int(i),
        )

    def corner_point(self, k: int) -> BoundaryPoint:
        c = self.corners[k]
        j = c.index
        prev = (j - 1) % len(self.arcs)
        return BoundaryPoint(
            c.point,
            ((prev, self.arcs[prev].t1), (j, self.arcs[j].t0)),
            theta=c.theta,
            corner=k,
        )

    def junction_point(self, j: int) -> BoundaryPoint:
        for k, c in enumerate(self.corners):
            if c.index == j:
                return self.corner_point(k)
        prev = (j - 1) % len(self.arcs)
        arc = self.arcs[j]
        return BoundaryPoint(
            complex(arc.point(arc.t0)), ((prev, self.arcs[prev].t1), (j, arc.t0))
        )

    def point_at_arclength(self, s: float) -> BoundaryPoint:
        """Boundary point at arclength ``s`` (mod perimeter) from the start of arc 0."""
        total = self.arc_offsets[-1]
        s = s % total
        tol = 1e-12 * total
        for j in range(len(self.arcs) + 1):
            if abs(s - self.arc_offsets[j]) <= tol:
                return self.junction_point(j % len(self.arcs))
        j = int(np.searchsorted(self.arc_offsets, s, side="right") - 1)
        j = min(max(j, 0), len(self.arcs) - 1)
        arc = self.arcs[j]
        t = arc.param_at_length(s - self.arc_offsets[j])
        return BoundaryPoint(complex(arc.point(t)), ((j, t),))

    def arclength_samples(self, count: int) -> list[BoundaryPoint]:
        """``count`` equally spaced points; the grid for ``2 count`` contains this one."""
        total = self.arc_offsets[-1]
        return [self.point_at_arclength(k * total / count) for k in range(count)]

    def base_points(self, sample_count: int) -> list[BoundaryPoint]:
        """All corners plus equal-arclength samples, without duplicates."""
        pts = [self.corner_point(k) for k in range(len(self.corners))]
        seen = {p.key() for p in pts}
        for p in self.arclength_samples(sample_count):
            if p.key() not in seen:
                seen.add(p.key())
                pts.append(p)
        return pts

    def closest_boundary_point(self, z: complex) -> tuple[BoundaryPoint, float]:
        best = None
        for j, arc in enumerate(self.arcs):
            t = arc.closest_param(z)
            dist = abs(complex(arc.point(t)) - z)
            if best is None or dist < best[2]:
                best = (j, t, dist)
        j, t, dist = best
        arc = self.arcs[j]
        snap = 1e-12 * max(1.0, abs(arc.t1 - arc.t0))
        if abs(t - arc.t0) <= snap:
            return self.junction_point(j), dist
        if abs(t - arc.t1) <= snap:
            return self.junction_point((j + 1) % len(self.arcs)), dist
        return BoundaryPoint(complex(arc.point(t)), ((j, t),)), dist

    def locate(self, z: complex, tol: float = 1e-9) -> BoundaryPoint:
        """Snap ``z`` onto the boundary; OffBoundary if it is farther than ``tol * scale``."""
        bp, dist = self.closest_boundary_point(complex(z))
        if dist > tol * self.scale:
            raise OffBoundary(f"point {z} is {dist:.3e} from the boundary")
        return bp

    def distance_to_boundary(self, z: complex) -> float:
        return self.closest_boundary_point(complex(z))[1]

    def contains(self, z: complex) -> bool:
        """Strict interior test.

        The nearest boundary point of an interior point is never a corner, and
        there ``z`` lies on the inner side of the tangent line.
        """
        z = complex(z)
        best = None
        for j, arc in enumerate(self.arcs):
            t = arc.closest_param(z)
            dist = abs(complex(arc.point(t)) - z)
            if best is None or dist < best[2]:
                best = (j, t, dist)
        j, t, dist = best
        if dist <= 1e-12 * self.scale:
            return False
        arc = self.arcs[j]
        tan = complex(arc.deriv(t))
        return _cross(tan, z - complex(arc.point(t))) > 0.0


def _find_corners(arcs: Sequence) -> list[Corner]:
    corners = []
    n = len(arcs)
    for j in range(n):
        prev = arcs[(j - 1) % n]
        cur = arcs[j]
        tin = complex(prev.deriv(prev.t1))
        tout = complex(cur.deriv(cur.t0))
        turn = math.atan2(_cross(tin, tout), (tin * np.conj(tout)).real)
        if turn < -1e-9:
            raise NonConvex("boundary turns clockwise at an arc junction")
        if turn > 1e-12:
            corners.append(Corner(complex(cur.point(cur.t0)), math.pi - turn, j))
    return corners


# ------------------------------------------------------------------ construction


def convex_hull(points: Sequence[complex], rel_tol: float = 1e-12) -> list[complex]:
    """Andrew's monotone chain; counter-clockwise, collinear points dropped.

    Ties are broken lexicographically on (x, y); the output starts at the
    lexicographically smallest point.
    """
    pts = sorted({(float(np.real(p)), float(np.imag(p))) for p in points})
    if len(pts) < 3:
        return [complex(x, y) for x, y in pts]
    xs = np.array(pts)
    scale = float(np.max(np.ptp(xs, axis=0))) or 1.0
    tol = rel_tol * scale * scale

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= tol:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= tol:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return [complex(x, y) for x, y in hull]


def _canonical_polygon(vertices: Sequence[complex], rel_tol: float = 1e-12) -> list[complex]:
    v = [complex(p) for p in vertices]
    if len(v) < 3:
        raise DegenerateDomain("a polygon needs at least three vertices")
    scale = max(abs(p - q) for p in v for q in v)
    if scale == 0:
        raise DegenerateDomain("all vertices coincide")
    # drop repeated vertices
    out = []
    for p in v:
        if not out or abs(p - out[-1]) > rel_tol * scale:
            out.append(p)
    if len(out) > 1 and abs(out[0] - out[-1]) <= rel_tol * scale:
        out.pop()
    if len(out) != len(v):
        raise DegenerateDomain("repeated vertices")
    area = 0.5 * sum(_cross(out[k], out[(k + 1) % len(out)]) for k in range(len(out)))
    if abs(area) <= rel_tol * scale * scale:
        raise DegenerateDomain("polygon has zero area")
    if area < 0:
        out.reverse()
        out = out[-1:] + out[:-1]
    # drop collinear vertices, then insist on strictly left turns
    changed = True
    while changed and len(out) > 3:
        changed = False
        for k in range(len(out)):
            a, b, c = out[k - 1], out[k], out[(k + 1) % len(out)]
            if abs(_cross(b - a, c - b)) <= rel_tol * abs(b - a) * abs(c - b):
                out.pop(k)
                changed = True
                break
    turning = 0.0
    for k in range(len(out)):
        a, b, c = out[k - 1], out[k], out[(k + 1) % len(out)]
        cr = _cross(b - a, c - b)
        if cr <= 0:
            raise NonConvex("vertices are not in strictly convex position")
        turning += math.atan2(cr, ((b - a) * np.conj(c - b)).real)
    if abs(turning - TWO_PI) > 1e-9:
        raise NonConvex("polygon winds more than once")
    return out


def _polygon_arcs(vertices: Sequence[complex]) -> tuple:
    n = len(vertices)
    return tuple(Segment(vertices[k], vertices[(k + 1) % n]) for k in range(n))


def _sector_arcs(r: float, theta: float, apex: complex, rot: complex) -> tuple:
    if abs(theta - math.pi) <= 1e-12:
        # the apex is not a corner; keep the diameter as one segment
        return (
            EllipticArc(apex, r, r, rot, 0.0, math.pi),
            Segment(apex - r * rot, apex + r * rot),
        )
    end = apex + r * rot * complex(math.cos(theta), math.sin(theta))
    return (
        Segment(apex, apex + r * rot),
        EllipticArc(apex, r, r, rot, 0.0, theta),
        Segment(end, apex),
    )


def _points(seq) -> list[complex]:
    out = []
    for p in seq:
        if isinstance(p, (list, tuple)):
            out.append(complex(float(p[0]), float(p[1])))
        else:
            out.append(complex(p))
    return out


def build(
    spec: dict,
    panels_per_arc: int = PANELS_PER_ARC,
    nodes_per_panel: int = NODES_PER_PANEL,
    grading_levels: int = GRADING_LEVELS,
) -> ConvexDomain:
    """Build a :class:`ConvexDomain` from its JSON-style description.

    Accepted ``spec["type"]`` values: ``ellipse`` (``a``, ``b``), ``polygon``
    (``vertices``), ``sector`` (``r``, ``theta``), ``disk`` (``cx``, ``cy``,
    ``r``) and ``hull`` (``points``). Ellipses and sectors also take optional
    ``cx``, ``cy`` (centre / apex) and ``angle`` (rotation).
    """
    if panels_per_arc < 1 or nodes_per_panel < 2:
        raise ValueError("need panels_per_arc >= 1 and nodes_per_panel >= 2")
    kind = spec["type"]
    center = complex(float(spec.get("cx", 0.0)), float(spec.get("cy", 0.0)))
    rot = complex(math.cos(float(spec.get("angle", 0.0))), math.sin(float(spec.get("angle", 0.0))))
    if kind == "ellipse":
        a, b = float(spec["a"]), float(spec["b"])
        if not (a > 0 and b > 0):
            raise DegenerateDomain("ellipse semi-axes must be positive")
        arcs = (EllipticArc(center, a, b, rot, 0.0, TWO_PI),)
        params = {"a": a, "b": b, "cx": center.real, "cy": center.imag, "angle": float(spec.get("angle", 0.0))}
    elif kind == "disk":
        r = float(spec["r"])
        if not r > 0:
            raise DegenerateDomain("disk radius must be positive")
        arcs = (EllipticArc(center, r, r, 1.0 + 0j, 0.0, TWO_PI),)
        params = {"cx": center.real, "cy": center.imag, "r": r}
    elif kind == "polygon":
        verts = _canonical_polygon(_points(spec["vertices"]))
        arcs = _polygon_arcs(verts)
        params = {"vertices": verts}
    elif kind == "hull":
        pts = _points(spec["points"])
        verts = convex_hull(pts, float(spec.get("rel_tol", 1e-12)))
        if len(verts) < 3:
            raise DegenerateDomain("hull has empty interior")
        verts = _canonical_polygon(verts)
        arcs = _polygon_arcs(verts)
        params = {"points": pts, "vertices": verts}
    elif kind == "sector":
        r, theta = float(spec["r"]), float(spec["theta"])
        if not r > 0:
            raise DegenerateDomain("sector radius must be positive")
        if not (0 < theta <= math.pi + 1e-12):
            raise NonConvex("sector opening angle must lie in (0, pi]")
        theta = min(theta, math.pi)
        arcs = _sector_arcs(r, theta, center, rot)
        params = {"r": r, "theta": theta, "cx": center.real, "cy": center.imag, "angle": float(spec.get("angle", 0.0))}
    else:
        raise ValueError(f"unknown domain type {kind!r}")
    d = ConvexDomain(kind, params, arcs, panels_per_arc, nodes_per_panel, grading_levels)
    if d.area() <= 0:
        raise DegenerateDomain("boundary is not counter-clockwise")
    return d


def affine_image(d: ConvexDomain, alpha: complex, beta: complex) -> ConvexDomain:
    """Image of ``d`` under ``z -> alpha z + beta`` (a similarity of the plane).

    Every supported kind is closed under similarities, so the image keeps its
    kind; a hull comes back as the polygon on its vertices. Quadrature settings
    are inherited and the arc chain keeps its starting point.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    if alpha == 0:
        raise ValueError("alpha must be non-zero")
    mag = abs(alpha)
    phase = alpha / mag
    ang = math.atan2(phase.imag, phase.real)
    p = d.params
    if d.kind in ("ellipse", "sector"):
        c = alpha * complex(p["cx"], p["cy"]) + beta
        spec = dict(type=d.kind, cx=c.real, cy=c.imag, angle=p["angle"] + ang)
        if d.kind == "ellipse":
            spec.update(a=p["a"] * mag, b=p["b"] * mag)
        else:
            spec.update(r=p["r"] * mag, theta=p["theta"])
    elif d.kind == "disk":
        c = alpha * complex(p["cx"], p["cy"]) + beta
        spec = dict(type="disk", cx=c.real, cy=c.imag, r=p["r"] * mag)
    else:
        spec = dict(type="polygon", vertices=[alpha * v + beta for v in p["vertices"]])
    out = build(spec, d.panels_per_arc, d.nodes_per_panel, d.grading_levels)
    out.frame = d.frame * phase
    return out


def corners(d: ConvexDomain) -> list[Corner]:
    return list(d.corners)


def domain_from_json(obj: dict, **kw) -> ConvexDomain:
    return build(obj, **kw)


def domain_to_json(d: ConvexDomain) -> dict:
    p = d.params
    if d.kind in ("polygon", "hull"):
        return {"type": "polygon", "vertices": [[v.real, v.imag] for v in p["vertices"]]}
    out = {"type": d.kind}
    out.update({k: v for k, v in p.items()})
    return out
