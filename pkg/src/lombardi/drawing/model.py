from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import CoverageMismatch, VertexAtCenter
from ..geom import DEFAULT_TOL, Arc, Circle, Point, Tolerance, dist, invert_arc, invert_point, scene_diameter
from ..reduction import RotGraph


@dataclass(frozen=True)
class LombardiDrawing:
    """Vertex placements and one arc per edge, directed from ``edge.u`` to ``edge.v``."""

    positions: tuple[Point, ...]
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(Point(float(x), float(y)) for x, y in self.positions))
        object.__setattr__(self, "arcs", tuple(self.arcs))

    @property
    def diameter(self) -> float:
        return scene_diameter(self.positions)

    def covers(self, G: RotGraph) -> bool:
        return len(self.positions) == G.num_vertices and len(self.arcs) == G.num_edges

    def require_cover(self, G: RotGraph) -> None:
        if not self.covers(G):
            raise CoverageMismatch(
                f"drawing has {len(self.positions)} vertices / {len(self.arcs)} edges, "
                f"graph has {G.num_vertices} / {G.num_edges}")

    def moved(self, G: RotGraph, v: int, new: Point) -> "LombardiDrawing":
        """Move vertex ``v`` and drag its arcs' endpoints along, keeping supports."""
        new = Point(*new)
        pos = list(self.positions)
        pos[v] = new
        arcs = list(self.arcs)
        for e in G.rotation[v]:
            a = arcs[e]
            u, w, _ = G.edges[e]
            p = new if u == v else a.p
            q = new if w == v else a.q
            arcs[e] = Arc.segment(p, q) if a.is_segment else Arc(a.support, p, q, a.ccw)
        return LombardiDrawing(tuple(pos), tuple(arcs))

    def max_deviation(self, other: "LombardiDrawing") -> float:
        """Largest positional difference relative to the scene diameter."""
        scale = max(self.diameter, 1e-300)
        worst = max((dist(p, q) for p, q in zip(self.positions, other.positions)), default=0.0)
        for a, b in zip(self.arcs, other.arcs):
            if a.is_segment != b.is_segment:
                return math.inf
            if not a.is_segment:
                worst = max(worst, dist(a.support.center, b.support.center),
                            abs(a.support.radius - b.support.radius))
                if a.ccw != b.ccw:
                    return math.inf
        return worst / scale


@dataclass(frozen=True)
class AngleAssignment:
    """Prescribed angle between rotation neighbours ``k`` and ``k + 1`` at each vertex."""

    angles: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(tuple(float(x) for x in row) for row in self.angles))

    @classmethod
    def uniform(cls, G: RotGraph) -> "AngleAssignment":
        return cls(tuple(tuple([2 * math.pi / G.degree(v)] * G.degree(v)) for v in range(G.num_vertices)))

    @classmethod
    def from_mapping(cls, G: RotGraph, rows: Mapping[int, Sequence[float]]) -> "AngleAssignment":
        base = list(cls.uniform(G).angles)
        for v, row in rows.items():
            base[v] = tuple(row)
        return cls(tuple(base))

    def check(self, G: RotGraph, tol: Tolerance = DEFAULT_TOL) -> None:
        if len(self.angles) != G.num_vertices:
            raise CoverageMismatch("angle assignment does not cover every vertex")
        for v, row in enumerate(self.angles):
            if len(row) != G.degree(v):
                raise CoverageMismatch(f"vertex {v}: {len(row)} angles for degree {G.degree(v)}")
            if any(not 0 < x < 2 * math.pi for x in row) and G.degree(v) > 1:
                raise ValueError(f"vertex {v}: angles must lie in (0, 2pi)")
            if G.degree(v) > 0 and abs(sum(row) - 2 * math.pi) > tol.eps_ang * max(1, len(row)):
                raise ValueError(f"vertex {v}: angles sum to {sum(row)}, not 2pi")


def apply_inversion(drawing: LombardiDrawing, c: Circle,
                    tol: Tolerance = DEFAULT_TOL) -> LombardiDrawing:
    """Invert every vertex and arc in ``c``."""
    for v, p in enumerate(drawing.positions):
        if dist(p, c.center) <= tol.eps_len:
            raise VertexAtCenter(f"vertex {v} sits at the inversion center")
    pos = tuple(invert_point(c, p) for p in drawing.positions)
    arcs = []
    for a in drawing.arcs:
        b = invert_arc(c, a, tol)
        arcs.append(b)
    return LombardiDrawing(pos, tuple(arcs))
