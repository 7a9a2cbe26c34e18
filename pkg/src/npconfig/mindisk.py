"""Smallest enclosing disk of a finite planar point set.

Points are complex numbers. The quotient norm ``||g + C 1||`` of a function
with finitely many sampled values is the radius of the smallest disk holding
those values, which is why this lives next to the kernel code.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateInput, NonFinite

SEED = 0x5EED
TOL = 1e-12


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return abs(z - self.center) <= self.radius + tol


def _prepare(points: Iterable) -> list[complex]:
    pts = [complex(p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    if not all(np.isfinite(p.real) and np.isfinite(p.imag) for p in pts):
        raise NonFinite("non-finite point")
    return pts


def _scale(pts: Sequence[complex]) -> float:
    xs = [p.real for p in pts]
    ys = [p.imag for p in pts]
    # bounding-box diagonal; within a factor sqrt 2 of the diameter and O(n)
    return float(np.hypot(max(xs) - min(xs), max(ys) - min(ys)))


def _disk2(a: complex, b: complex) -> Disk:
    return Disk((a + b) / 2, abs(a - b) / 2)


def _disk3(a: complex, b: complex, c: complex) -> Disk:
    # put the origin at the vertex opposite the longest side
    tri = [a, b, c]
    sides = [abs(b - c), abs(c - a), abs(a - b)]
    k = int(np.argmax(sides))
    o = tri[k]
    u, v = tri[(k + 1) % 3] - o, tri[(k + 2) % 3] - o
    cross = (u.conjugate() * v).imag
    if abs(cross) <= 1e-14 * abs(u) * abs(v):
        # collinear: the two extreme points
        pairs = [(a, b), (b, c), (a, c)]
        return _disk2(*max(pairs, key=lambda p: abs(p[0] - p[1])))
    w = (abs(u) ** 2 * v - abs(v) ** 2 * u) / (2j * cross)
    center = o + w
    return Disk(center, max(abs(a - center), abs(b - center), abs(c - center)))


def min_enclosing_disk(points: Iterable) -> Disk:
    """Smallest disk containing every point (randomized incremental Welzl)."""
    pts = list(dict.fromkeys(_prepare(points)))
    if len(pts) == 1:
        return Disk(pts[0], 0.0)
    random.Random(SEED).shuffle(pts)
    tol = TOL * _scale(pts)

    def out(p: complex, d: Disk) -> bool:
        return abs(p - d.center) > d.radius + tol

    disk = Disk(pts[0], 0.0)
    for i in range(1, len(pts)):
        if not out(pts[i], disk):
            continue
        disk = Disk(pts[i], 0.0)
        for j in range(i):
            if not out(pts[j], disk):
                continue
            disk = _disk2(pts[i], pts[j])
            for k in range(j):
                if out(pts[k], disk):
                    disk = _disk3(pts[i], pts[j], pts[k])
    return disk


def quotient_norm(values: Iterable) -> float:
    """``min over lambda of max |v - lambda|``."""
    return min_enclosing_disk(values).radius


def support_set(points: Iterable) -> list[complex]:
    """At most three input points whose smallest disk equals that of the whole set.

    Two points are returned when an antipodal pair exists, otherwise three
    points that are not contained in any open half circle.
    """
    pts = list(dict.fromkeys(_prepare(points)))
    scale = _scale(pts)
    if len(pts) < 2 or scale == 0.0:
        raise DegenerateInput("all points coincide")
    disk = min_enclosing_disk(pts)
    tol = 1e-9 * scale
    rim = [p for p in pts if abs(abs(p - disk.center) - disk.radius) <= tol]

    def same(d: Disk) -> bool:
        return abs(d.center - disk.center) <= 1e-12 * scale and abs(d.radius - disk.radius) <= 1e-12 * scale

    best = max(itertools.combinations(rim, 2), key=lambda pq: abs(pq[0] - pq[1]))
    if same(_disk2(*best)):
        return list(best)
    for tri in itertools.combinations(rim, 3):
        if same(min_enclosing_disk(tri)):
            return list(tri)
    # rounding left no exact triple; return the one whose disk is closest
    tri = min(
        itertools.combinations(rim, 3),
        key=lambda t: abs(min_enclosing_disk(t).radius - disk.radius),
    )
    return list(tri)


def angular_gaps(points: Sequence[complex], center: complex) -> list[float]:
    """Gaps between the directions of ``points`` seen from ``center``, summing to 2 pi."""
    ang = sorted(float(np.angle(complex(p) - center)) for p in points)
    gaps = [b - a for a, b in zip(ang, ang[1:])]
    gaps.append(2 * np.pi - (ang[-1] - ang[0]))
    return gaps
