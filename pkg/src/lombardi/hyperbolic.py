"""Beltrami-Klein chords and Poincare-disk lines in a common disk.

Both models live in the same disk and share ideal points, so a chord
and the orthogonal arc with the same endpoints represent the same
hyperbolic line.  Lines are oriented from their left (smaller x) ideal
point to the right one, matching the x-monotone convention used for
pseudolines.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .arrangement import CombinatorialDescription, EuclideanLine, _check_lines
from .errors import ConcurrentTriple, DiameterChord, InvalidPoincareLine
from .geom import (
    DEFAULT_TOL,
    Arc,
    Circle,
    Point,
    Tolerance,
    circle_circle_intersections,
    dist,
    line_line_intersection,
)


@dataclass(frozen=True)
class DiskModel:
    disk: Circle

    @property
    def center(self) -> Point:
        return self.disk.center

    @property
    def radius(self) -> float:
        return self.disk.radius

    def normalize(self, p) -> Point:
        c, r = self.disk.center, self.disk.radius
        return Point((p[0] - c.x) / r, (p[1] - c.y) / r)

    def on_boundary(self, p, tol: Tolerance = DEFAULT_TOL) -> bool:
        return abs(dist(p, self.center) - self.radius) <= tol.eps_len * max(1.0, self.radius)


@dataclass(frozen=True)
class KleinChord:
    p: Point
    q: Point

    def segment(self) -> Arc:
        return Arc.segment(self.p, self.q)


@dataclass(frozen=True)
class PoincareLine:
    """A Poincare-disk line: the part inside the disk of an orthogonal circle."""

    arc: Arc

    @property
    def p(self) -> Point:
        return self.arc.p

    @property
    def q(self) -> Point:
        return self.arc.q

    @property
    def support(self) -> Circle:
        return self.arc.support


@dataclass(frozen=True)
class CrossingOrder:
    """Per-line crossing lists plus the pairs that never met inside the disk."""

    lists: tuple[tuple[int, ...], ...]
    missing: frozenset[frozenset[int]]

    @property
    def complete(self) -> bool:
        return not self.missing

    @property
    def description(self) -> CombinatorialDescription:
        return CombinatorialDescription(self.lists)


def orthogonality_residual(m: DiskModel, support: Circle) -> float:
    """``d^2 - r^2 - R^2`` scaled by the disk radius squared."""
    d = dist(support.center, m.center)
    return (d * d - m.radius ** 2 - support.radius ** 2) / (m.radius ** 2)


def check_poincare_line(m: DiskModel, pl: PoincareLine, tol: Tolerance = DEFAULT_TOL) -> None:
    if pl.arc.is_segment:
        raise InvalidPoincareLine("diameters are not represented as Poincare lines")
    for x in (pl.p, pl.q):
        if not m.on_boundary(x, tol):
            raise InvalidPoincareLine(f"ideal point {x} is off the disk boundary")
    res = orthogonality_residual(m, pl.support)
    scale = max(1.0, (pl.support.radius / m.radius) ** 2)
    if abs(res) > 1e-9 * scale:
        raise InvalidPoincareLine(f"support circle not orthogonal to the disk (residual {res:.3e})")
    if not m.disk.contains(pl.arc.midpoint()):
        raise InvalidPoincareLine("arc does not run inside the disk")


def klein_to_poincare(m: DiskModel, ch: KleinChord, tol: Tolerance = DEFAULT_TOL) -> PoincareLine:
    u, v = m.normalize(ch.p), m.normalize(ch.q)
    det = u.x * v.y - u.y * v.x
    if abs(det) <= tol.eps_ang:
        raise DiameterChord("chord passes through the disk center")
    # z . u = z . v = 1
    zx = (v.y - u.y) / det
    zy = (u.x - v.x) / det
    R = m.radius
    center = Point(m.center.x + R * zx, m.center.y + R * zy)
    radius = R * math.sqrt(zx * zx + zy * zy - 1.0)
    # the disk center and the support center lie on opposite sides of the chord
    ccw = det < 0
    return PoincareLine(Arc(Circle(center, radius), ch.p, ch.q, ccw))


def poincare_to_klein(m: DiskModel, pl: PoincareLine, tol: Tolerance = DEFAULT_TOL) -> KleinChord:
    check_poincare_line(m, pl, tol)
    return KleinChord(pl.p, pl.q)


def _clip(m: DiskModel, line: EuclideanLine) -> KleinChord:
    cx, cy = m.center
    a, b = line.a, line.b
    # (x - cx)^2 + (a x + b - cy)^2 = R^2
    k = b - cy
    A = 1.0 + a * a
    B = 2.0 * (a * k - cx)
    C = cx * cx + k * k - m.radius ** 2
    disc = B * B - 4.0 * A * C
    s = math.sqrt(disc)
    # stable root pair
    qq = -0.5 * (B + math.copysign(s, B))
    x1, x2 = sorted((qq / A, C / qq))
    return KleinChord(Point(x1, line.y(x1)), Point(x2, line.y(x2)))


def _line_distance(line: EuclideanLine, p) -> float:
    return abs(line.a * p[0] - p[1] + line.b) / math.hypot(line.a, 1.0)


def lines_to_klein(lines: Sequence[EuclideanLine], tol: Tolerance = DEFAULT_TOL,
                   inflate: float = 1.2, min_offset: float = 0.05
                   ) -> tuple[DiskModel, list[KleinChord]]:
    """Enclose every crossing in a disk and clip the lines to chords.

    The disk is centered near the centroid of the crossings with radius
    ``inflate`` times the largest center-crossing distance (at least
    the crossing spread).  If some line passes within
    ``min_offset * R`` of the centroid, a fixed ring of candidate
    centers is searched for one that keeps every chord away from being
    a diameter.
    """
    lines = list(lines)
    _check_lines(lines, tol)
    n = len(lines)
    if n < 2:
        raise ValueError("need at least two lines")
    pts = []
    for i, j in itertools.combinations(range(n), 2):
        x = lines[i].crossing_x(lines[j])
        pts.append(Point(x, lines[i].y(x)))
    for (i, j) in itertools.combinations(range(n), 2):
        p = pts[_pair_index(n, i, j)]
        for k in range(n):
            if k in (i, j):
                continue
            if _line_distance(lines[k], p) <= tol.eps_len * max(1.0, abs(p.x), abs(p.y)):
                raise ConcurrentTriple(f"lines {i}, {j}, {k} are concurrent")
    P = np.array(pts)
    centroid = P.mean(axis=0)
    spread = float(np.max(np.linalg.norm(P - centroid, axis=1)))
    if spread <= 0.0:
        spread = max(1.0, float(np.max(np.abs(centroid))))

    def candidate(c):
        reach = float(np.max(np.linalg.norm(P - c, axis=1)))
        R = max(inflate * reach, spread)
        score = min(_line_distance(ln, c) for ln in lines) / R
        return R, score

    best = None
    rings = [(0.0, 1)] + [(rho, 16) for rho in (0.25, 0.5, 0.75)]
    for rho, count in rings:
        for k in range(count):
            ang = 2.0 * math.pi * k / count
            c = centroid + rho * spread * np.array([math.cos(ang), math.sin(ang)])
            R, score = candidate(c)
            if best is None or score > best[2]:
                best = (c, R, score)
            if score >= min_offset:
                break
        if best[2] >= min_offset:
            break
    c, R, _ = best
    m = DiskModel(Circle(Point(float(c[0]), float(c[1])), R))
    return m, [_clip(m, ln) for ln in lines]


def _pair_index(n: int, i: int, j: int) -> int:
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def lines_to_poincare(lines: Sequence[EuclideanLine], tol: Tolerance = DEFAULT_TOL
                      ) -> tuple[DiskModel, list[PoincareLine]]:
    m, chords = lines_to_klein(lines, tol)
    return m, [klein_to_poincare(m, ch, tol) for ch in chords]


def _order(n: int, hits: dict[tuple[int, int], tuple[float, float]]) -> CrossingOrder:
    rows: list[list[tuple[float, int]]] = [[] for _ in range(n)]
    missing = set()
    for i, j in itertools.combinations(range(n), 2):
        if (i, j) not in hits:
            missing.add(frozenset((i + 1, j + 1)))
            continue
        ti, tj = hits[(i, j)]
        rows[i].append((ti, j + 1))
        rows[j].append((tj, i + 1))
    lists = tuple(tuple(k for _, k in sorted(r)) for r in rows)
    return CrossingOrder(lists, frozenset(missing))


def klein_crossing_order(m: DiskModel, chords: Sequence[KleinChord],
                         tol: Tolerance = DEFAULT_TOL) -> CrossingOrder:
    """Crossing lists of chords, read along each chord from ``p`` to ``q``."""
    segs = [ch.segment() for ch in chords]
    hits = {}
    for i, j in itertools.combinations(range(len(segs)), 2):
        pts = line_line_intersection(segs[i].support, segs[j].support, tol)
        if not pts:
            continue
        x = pts[0]
        if m.disk.contains(x) and segs[i].contains(x, tol) and segs[j].contains(x, tol):
            hits[(i, j)] = (segs[i].param(x), segs[j].param(x))
    return _order(len(segs), hits)


def hyperbolic_crossing_order(m: DiskModel, pls: Sequence[PoincareLine],
                              tol: Tolerance = DEFAULT_TOL) -> CrossingOrder:
    """Crossing lists of Poincare lines, read along each arc from ``p`` to ``q``."""
    hits = {}
    for i, j in itertools.combinations(range(len(pls)), 2):
        ai, aj = pls[i].arc, pls[j].arc
        for x in circle_circle_intersections(ai.support, aj.support, tol):
            if m.disk.contains(x) and ai.contains(x, tol) and aj.contains(x, tol):
                hits[(i, j)] = (ai.param(x), aj.param(x))
                break
    return _order(len(pls), hits)


def euclidean_line_of(ch: KleinChord) -> EuclideanLine:
    """Extend a chord back to its full line (chords must not be vertical)."""
    (x0, y0), (x1, y1) = ch.p, ch.q
    a = (y1 - y0) / (x1 - x0)
    return EuclideanLine(a, y0 - a * x0)

