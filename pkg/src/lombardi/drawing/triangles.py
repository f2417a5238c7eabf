"""Arc-triangles and the circle-forcing probes built on them."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import CoincidentCircles, CollinearPoints, NotSimple, PreconditionViolated, SegmentEdge
from ..geom import (
    DEFAULT_TOL,
    Arc,
    Circle,
    Point,
    Tolerance,
    _dot,
    arc_intersections,
    circumcircle,
    dist,
    norm_angle,
    tangent_direction,
    unit,
)
from ..reduction import RotGraph
from .model import LombardiDrawing

#: Edge kinds that can lie on a forced cycle.
CYCLE_KINDS = ("CycleGamma", "Ei", "Path", "CrossCycle")


@dataclass(frozen=True)
class ArcTriangle:
    """Vertices in clockwise order; ``arcs[i]`` joins the two vertices other than ``v_i``."""

    vertices: tuple[Point, Point, Point]
    arcs: tuple[Arc, Arc, Arc]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(Point(*v) for v in self.vertices))
        object.__setattr__(self, "arcs", tuple(self.arcs))

    def arc(self, i: int) -> Arc:
        return self.arcs[i % 3]

    def vertex(self, i: int) -> Point:
        return self.vertices[i % 3]


@dataclass(frozen=True)
class TriangleAngles:
    theta: tuple[float, float, float]
    phi: tuple[float, float, float] | None
    psi: float
    psi_alt: float

    @property
    def collinear(self) -> bool:
        return self.phi is None

    def formula_residuals(self) -> tuple[tuple[float, ...], tuple[float, ...]] | None:
        """``phi - (psi + theta)`` and ``phi - (psi_alt - theta)`` per vertex."""
        if self.phi is None:
            return None
        a = tuple(f - (self.psi + t) for f, t in zip(self.phi, self.theta))
        b = tuple(f - (self.psi_alt - t) for f, t in zip(self.phi, self.theta))
        return a, b


def _same_support_overlap(a: Arc, b: Arc, tol: Tolerance) -> bool:
    for x, y in ((a, b), (b, a)):
        if y.contains(x.midpoint(), tol, interior=True):
            return True
        for end in (x.p, x.q):
            if y.contains(end, tol, interior=True):
                return True
    return False


def check_simple(t: ArcTriangle, tol: Tolerance = DEFAULT_TOL) -> None:
    for i in range(3):
        a = t.arc(i)
        ends = {t.vertex(i + 1), t.vertex(i + 2)}
        for x in (a.p, a.q):
            if min(dist(x, e) for e in ends) > tol.eps_len:
                raise NotSimple(f"arc {i} does not join the two vertices opposite v{i}")
    for i, j in itertools.combinations(range(3), 2):
        a, b = t.arc(i), t.arc(j)
        shared = t.vertex(3 - i - j)
        if a.support.same_as(b.support, tol):
            # parallel lines report no intersection, so test shared supports first
            if _same_support_overlap(a, b, tol):
                raise NotSimple(f"arcs {i} and {j} overlap")
            continue
        try:
            pts = arc_intersections(a, b, tol)
        except CoincidentCircles:
            if _same_support_overlap(a, b, tol):
                raise NotSimple(f"arcs {i} and {j} overlap") from None
            continue
        if any(dist(x, shared) > tol.eps_len for x in pts):
            raise NotSimple(f"arcs {i} and {j} meet away from their common vertex")


def _interior_angle(t: ArcTriangle, i: int, tol: Tolerance) -> float:
    v = t.vertex(i)
    out = tangent_direction(t.arc(i + 2), v, tol)  # towards v_{i+1}
    back = tangent_direction(t.arc(i + 1), v, tol)  # towards v_{i-1}
    # interior lies to the right of the outgoing direction
    return norm_angle(out - back)


def _bigon_angle(t: ArcTriangle, c: Circle, i: int, tol: Tolerance) -> float:
    a = t.arc(i)
    x, far = t.vertex(i + 1), t.vertex(i - 1)
    opposite = t.vertex(i)
    ta = unit(tangent_direction(a, x, tol))
    # the arc of c from x to the other endpoint avoiding v_i
    for ccw in (True, False):
        side = Arc(c, x, far, ccw)
        if not side.contains(opposite, tol, interior=True):
            break
    tc = unit(tangent_direction(side, x, tol))
    size = math.acos(max(-1.0, min(1.0, _dot(ta, tc))))
    mid = a.midpoint()
    r = dist(mid, c.center) - c.radius
    if abs(r) <= tol.eps_len * max(1.0, c.radius):
        return 0.0
    return size if r < 0 else -size


def arc_triangle_angles(t: ArcTriangle, tol: Tolerance = DEFAULT_TOL) -> TriangleAngles:
    """Interior angles, and the signed bigon angles against the circumcircle.

    A bigon angle is positive when the arc runs inside the circumcircle
    and negative outside; ``phi`` is ``None`` for collinear vertices.
    """
    check_simple(t, tol)
    theta = tuple(_interior_angle(t, i, tol) for i in range(3))
    s = sum(theta)
    psi, psi_alt = (math.pi + s) / 2.0, (s - math.pi) / 2.0
    try:
        c = circumcircle(*t.vertices, tol=tol)
    except CollinearPoints:
        return TriangleAngles(theta, None, psi, psi_alt)
    phi = tuple(_bigon_angle(t, c, i, tol) for i in range(3))
    return TriangleAngles(theta, phi, psi, psi_alt)


def check_midpoint_on_circle(t: ArcTriangle, tol: Tolerance = DEFAULT_TOL,
                             angle_tol: float = 1e-9) -> bool:
    """For the forcing angle pattern, whether ``v1`` sits on ``c1`` off the arc ``a1``."""
    th = arc_triangle_angles(t, tol).theta
    if abs(th[0] - th[1]) > angle_tol or abs(th[2] - math.pi) > angle_tol:
        raise PreconditionViolated(f"angles {th} do not match theta0 = theta1, theta2 = pi")
    if not math.pi - angle_tol <= th[0] < 1.5 * math.pi:
        raise PreconditionViolated(f"theta0 = {th[0]} outside [pi, 3pi/2)")
    a1 = t.arc(1)
    if a1.is_segment:
        raise PreconditionViolated("a1 must be a circular arc")
    v1 = t.vertex(1)
    scale = max(1.0, a1.support.radius)
    on = abs(a1.support.residual(v1)) <= tol.eps_len * 1e3 * scale
    return on and not a1.contains(v1, tol, interior=True)


def check_circle_forcing(G: RotGraph, drawing: LombardiDrawing, cycle: Sequence[int],
                         tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether the whole cycle lies on the support circle of its closing edge."""
    k = len(cycle)
    closing = G.edge_between(cycle[-1], cycle[0], CYCLE_KINDS)
    a = drawing.arcs[closing]
    if a.is_segment:
        raise SegmentEdge("closing edge is drawn straight; invert the drawing first")
    c = a.support
    eps = tol.eps_len * 1e3 * max(1.0, c.radius)
    if any(abs(c.residual(drawing.positions[v])) > eps for v in cycle):
        return False
    for m in range(k):
        b = drawing.arcs[G.edge_between(cycle[m], cycle[(m + 1) % k], CYCLE_KINDS)]
        if b.is_segment or not c.same_as(b.support, Tolerance(eps, tol.eps_ang)):
            return False
    return True

