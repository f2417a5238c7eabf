"""Euclidean and inversive plane geometry on doubles.

Points are plain ``(x, y)`` named tuples; the extended plane adds the
singleton :data:`INF`.  Circles and lines are the two kinds of
generalized circle, and an :class:`Arc` is a directed piece of one of
them (a circular arc or a straight segment).

Every comparing operation takes a :class:`Tolerance`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

from .errors import (
    CoincidentCircles,
    CoincidentEndpoints,
    CollinearPoints,
    DegenerateConfiguration,
    NoProperIntersection,
    NotAnEndpoint,
    TouchingArcs,
)

TAU = 2.0 * math.pi


class Point(NamedTuple):
    x: float
    y: float


class _PointAtInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_PointAtInfinity, ())


INF = _PointAtInfinity()
ExtendedPoint = Union[Point, _PointAtInfinity]


@dataclass(frozen=True)
class Tolerance:
    eps_len: float = 1e-9
    eps_ang: float = 1e-9

    def __post_init__(self):
        if not (self.eps_len > 0 and self.eps_ang > 0):
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


# -- small vector helpers -------------------------------------------------

def _sub(a, b) -> Point:
    return Point(a[0] - b[0], a[1] - b[1])


def _add(a, b) -> Point:
    return Point(a[0] + b[0], a[1] + b[1])


def _scale(a, s) -> Point:
    return Point(a[0] * s, a[1] * s)


def _dot(a, b) -> float:
    return a[0] * b[0] + a[1] * b[1]


def _cross(a, b) -> float:
    return a[0] * b[1] - a[1] * b[0]


def _rot90(a) -> Point:
    return Point(-a[1], a[0])


def dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def norm_angle(t: float) -> float:
    """Reduce an angle to [0, 2pi)."""
    t = math.fmod(t, TAU)
    if t < 0:
        t += TAU
    if t >= TAU:
        t -= TAU
    return t


def wrap_pi(t: float) -> float:
    """Reduce an angle to [-pi, pi)."""
    return norm_angle(t + math.pi) - math.pi


def as_angle(d) -> float:
    """Accept either an angle in radians or a direction vector."""
    if isinstance(d, (int, float)):
        return norm_angle(float(d))
    return norm_angle(math.atan2(d[1], d[0]))


def unit(angle: float) -> Point:
    return Point(math.cos(angle), math.sin(angle))


# -- primitives -----------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", Point(float(self.center[0]), float(self.center[1])))
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be positive and finite, got {self.radius}")

    def point_at(self, angle: float) -> Point:
        return Point(self.center.x + self.radius * math.cos(angle),
                     self.center.y + self.radius * math.sin(angle))

    def angle_of(self, p) -> float:
        return norm_angle(math.atan2(p[1] - self.center.y, p[0] - self.center.x))

    def residual(self, p) -> float:
        """Signed distance of ``p`` from the circle (positive outside)."""
        return dist(p, self.center) - self.radius

    def contains(self, p, strict: bool = True) -> bool:
        r = self.residual(p)
        return r < 0 if strict else r <= 0

    def same_as(self, other, tol: Tolerance = DEFAULT_TOL) -> bool:
        return (isinstance(other, Circle)
                and dist(self.center, other.center) <= tol.eps_len
                and abs(self.radius - other.radius) <= tol.eps_len)


@dataclass(frozen=True)
class Line:
    """The set of points ``x`` with ``normal . x == offset``."""

    normal: Point
    offset: float

    def __post_init__(self):
        n = Point(float(self.normal[0]), float(self.normal[1]))
        length = math.hypot(*n)
        if abs(length - 1.0) > 1e-9:
            raise ValueError("line normal must have unit length")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def through(cls, p, q) -> "Line":
        d = _sub(q, p)
        length = math.hypot(*d)
        if length == 0:
            raise CoincidentEndpoints("a line needs two distinct points")
        n = Point(-d[1] / length, d[0] / length)
        return cls(n, _dot(n, p))

    @property
    def direction(self) -> Point:
        return Point(self.normal.y, -self.normal.x)

    def residual(self, p) -> float:
        return _dot(self.normal, p) - self.offset

    def foot(self, p) -> Point:
        return _sub(p, _scale(self.normal, self.residual(p)))

    def same_as(self, other, tol: Tolerance = DEFAULT_TOL) -> bool:
        if not isinstance(other, Line):
            return False
        s = 1.0 if _dot(self.normal, other.normal) >= 0 else -1.0
        return (abs(self.normal.x - s * other.normal.x) <= tol.eps_ang
                and abs(self.normal.y - s * other.normal.y) <= tol.eps_ang
                and abs(self.offset - s * other.offset) <= tol.eps_len)


GeneralizedCircle = Union[Circle, Line]


@dataclass(frozen=True)
class Arc:
    """Directed arc from ``p`` to ``q`` on ``support``.

    For a circle support the arc runs counterclockwise when ``ccw`` is
    true; for a line support it is the segment ``pq`` and ``ccw`` is
    ignored.  Construction does not check incidence; use :meth:`check`.
    """

    support: GeneralizedCircle
    p: Point
    q: Point
    ccw: bool = True

    def __post_init__(self):
        object.__setattr__(self, "p", Point(float(self.p[0]), float(self.p[1])))
        object.__setattr__(self, "q", Point(float(self.q[0]), float(self.q[1])))

    @classmethod
    def segment(cls, p, q) -> "Arc":
        return cls(Line.through(p, q), p, q, True)

    @classmethod
    def from_angles(cls, circle: Circle, a0: float, a1: float, ccw: bool = True) -> "Arc":
        return cls(circle, circle.point_at(a0), circle.point_at(a1), ccw)

    @property
    def is_segment(self) -> bool:
        return isinstance(self.support, Line)

    @property
    def start_angle(self) -> float:
        return self.support.angle_of(self.p)

    @property
    def end_angle(self) -> float:
        return self.support.angle_of(self.q)

    @property
    def sweep(self) -> float:
        """Unsigned angle swept (circles) or length (segments)."""
        if self.is_segment:
            return dist(self.p, self.q)
        d = self.end_angle - self.start_angle
        return norm_angle(d if self.ccw else -d)

    def reversed(self) -> "Arc":
        return Arc(self.support, self.q, self.p, not self.ccw)

    def complement(self) -> "Arc":
        """The rest of the support circle, still directed from p to q."""
        if self.is_segment:
            raise ValueError("a segment has no complementary arc")
        return Arc(self.support, self.p, self.q, not self.ccw)

    def param(self, x) -> float:
        """Offset of ``x`` along the arc from ``p``: angle or length."""
        if self.is_segment:
            d = _sub(self.q, self.p)
            return _dot(_sub(x, self.p), d) / math.hypot(*d)
        d = self.support.angle_of(x) - self.start_angle
        return norm_angle(d if self.ccw else -d)

    def point_at(self, frac: float) -> Point:
        if self.is_segment:
            return _add(self.p, _scale(_sub(self.q, self.p), frac))
        s = frac * self.sweep
        return self.support.point_at(self.start_angle + (s if self.ccw else -s))

    def midpoint(self) -> Point:
        return self.point_at(0.5)

    def travel_direction(self, x) -> Point:
        """Unit velocity of the arc's parametrization at ``x`` (on the support)."""
        if self.is_segment:
            d = _sub(self.q, self.p)
            return _scale(d, 1.0 / math.hypot(*d))
        r = _sub(x, self.support.center)
        t = _scale(_rot90(r), 1.0 / math.hypot(*r))
        return t if self.ccw else _scale(t, -1.0)

    def contains(self, x, tol: Tolerance = DEFAULT_TOL, interior: bool = False) -> bool:
        """Whether ``x`` lies on the arc; with ``interior`` endpoints are excluded."""
        if abs(self.support.residual(x)) > tol.eps_len:
            return False
        if interior and (dist(x, self.p) <= tol.eps_len or dist(x, self.q) <= tol.eps_len):
            return False
        if dist(x, self.p) <= tol.eps_len or dist(x, self.q) <= tol.eps_len:
            return True
        if self.is_segment:
            t = self.param(x)
            return 0.0 <= t <= self.sweep
        return self.param(x) <= self.sweep

    def distance(self, x) -> float:
        """Euclidean distance from ``x`` to the arc."""
        if self.is_segment:
            t = min(max(self.param(x), 0.0), self.sweep)
            d = _sub(self.q, self.p)
            foot = _add(self.p, _scale(d, t / math.hypot(*d)))
            return dist(x, foot)
        c = self.support.center
        if dist(x, c) > 0 and self.param(x) <= self.sweep:
            return abs(dist(x, c) - self.support.radius)
        return min(dist(x, self.p), dist(x, self.q))

    def check(self, tol: Tolerance = DEFAULT_TOL) -> None:
        if dist(self.p, self.q) <= tol.eps_len:
            raise CoincidentEndpoints("arc endpoints coincide")
        for x in (self.p, self.q):
            if abs(self.support.residual(x)) > tol.eps_len:
                raise ValueError(f"arc endpoint {x} is off its support")


# -- inversion ------------------------------------------------------------

def invert_point(c: Circle, p: ExtendedPoint) -> ExtendedPoint:
    """Image of ``p`` under inversion in ``c``; the center and INF swap."""
    if p is INF:
        return c.center
    d = _sub(p, c.center)
    d2 = _dot(d, d)
    if d2 == 0.0:
        return INF
    return _add(c.center, _scale(d, c.radius * c.radius / d2))


def invert_generalized(c: Circle, g: GeneralizedCircle,
                       tol: Tolerance = DEFAULT_TOL) -> GeneralizedCircle:
    m, r2 = c.center, c.radius * c.radius
    if isinstance(g, Line):
        h = g.residual(m)
        if abs(h) <= tol.eps_len:
            return g
        f = invert_point(c, g.foot(m))
        return Circle(_scale(_add(m, f), 0.5), dist(m, f) / 2.0)
    u = _sub(g.center, m)
    du = math.hypot(*u)
    if abs(du - g.radius) <= tol.eps_len:
        # circle through the center becomes a line
        a = invert_point(c, _sub(_scale(g.center, 2.0), m))
        n = _scale(u, 1.0 / du)
        return Line(n, _dot(n, a))
    k = du * du - g.radius * g.radius
    return Circle(_add(m, _scale(u, r2 / k)), r2 * g.radius / abs(k))


def invert_arc(c: Circle, a: Arc, tol: Tolerance = DEFAULT_TOL) -> Arc:
    """Invert a finite arc; the result must stay finite."""
    p, q, mid = (invert_point(c, x) for x in (a.p, a.q, a.midpoint()))
    if INF in (p, q, mid):
        raise DegenerateConfiguration("arc passes through the inversion center")
    if a.is_segment:
        if abs(a.support.residual(c.center)) <= tol.eps_len and a.contains(c.center, tol):
            raise DegenerateConfiguration("segment passes through the inversion center")
    elif a.contains(c.center, tol):
        raise DegenerateConfiguration("arc passes through the inversion center")
    g = invert_generalized(c, a.support, tol)
    if isinstance(g, Line):
        return Arc(Line.through(p, q), p, q, True)
    # orientation: the image arc must pass through the image of the midpoint
    out = Arc(g, p, q, True)
    if out.param(mid) > out.sweep:
        out = Arc(g, p, q, False)
    return out


# -- intersections --------------------------------------------------------

def circle_circle_intersections(c1: Circle, c2: Circle,
                                tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    """Intersection points sorted lexicographically; tangency gives one point."""
    d = dist(c1.center, c2.center)
    if d <= tol.eps_len and abs(c1.radius - c2.radius) <= tol.eps_len:
        raise CoincidentCircles("circles coincide")
    r1, r2 = c1.radius, c2.radius
    if d <= tol.eps_len:
        return []
    u = _scale(_sub(c2.center, c1.center), 1.0 / d)
    if abs(d - (r1 + r2)) <= tol.eps_len:
        return [_add(c1.center, _scale(u, r1))]
    if abs(d - abs(r1 - r2)) <= tol.eps_len:
        s = r1 if r1 > r2 else -r1
        return [_add(c1.center, _scale(u, s))]
    if d > r1 + r2 or d < abs(r1 - r2):
        return []
    # work from the smaller circle and factor the differences of squares,
    # otherwise a tiny circle cut by a huge one loses most of its digits
    if r2 < r1:
        c1, c2, r1, r2, u = c2, c1, r2, r1, _scale(u, -1.0)
    a = ((d - r2) * (d + r2) + r1 * r1) / (2.0 * d)
    h = math.sqrt(max((r1 - a) * (r1 + a), 0.0))
    base = _add(c1.center, _scale(u, a))
    n = _rot90(u)
    return sorted([_add(base, _scale(n, h)), _sub(base, _scale(n, h))])


def circle_line_intersections(c: Circle, g: Line,
                              tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    h = g.residual(c.center)
    foot = g.foot(c.center)
    if abs(abs(h) - c.radius) <= tol.eps_len:
        return [foot]
    if abs(h) > c.radius:
        return []
    s = math.sqrt((c.radius - abs(h)) * (c.radius + abs(h)))
    d = g.direction
    return sorted([_add(foot, _scale(d, s)), _sub(foot, _scale(d, s))])


def line_line_intersection(g1: Line, g2: Line, tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    det = _cross(g1.normal, g2.normal)
    if abs(det) <= tol.eps_ang:
        return []
    x = (g1.offset * g2.normal.y - g2.offset * g1.normal.y) / det
    y = (g1.normal.x * g2.offset - g2.normal.x * g1.offset) / det
    return [Point(x, y)]


def intersect(g1: GeneralizedCircle, g2: GeneralizedCircle,
              tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    if isinstance(g1, Circle) and isinstance(g2, Circle):
        return circle_circle_intersections(g1, g2, tol)
    if isinstance(g1, Circle):
        return circle_line_intersections(g1, g2, tol)
    if isinstance(g2, Circle):
        return circle_line_intersections(g2, g1, tol)
    return line_line_intersection(g1, g2, tol)


def arc_intersections(a: Arc, b: Arc, tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    """Points common to both arcs (supports must differ)."""
    return [x for x in intersect(a.support, b.support, tol)
            if a.contains(x, tol) and b.contains(x, tol)]


# -- directions -----------------------------------------------------------

def tangent_direction(a: Arc, at, tol: Tolerance = DEFAULT_TOL) -> float:
    """Angle of the unit tangent at an endpoint, pointing into the arc."""
    if dist(at, a.p) <= tol.eps_len:
        t = a.travel_direction(a.p)
    elif dist(at, a.q) <= tol.eps_len:
        t = _scale(a.travel_direction(a.q), -1.0)
    else:
        raise NotAnEndpoint(f"{at} is not an endpoint of the arc")
    return as_angle(t)


def angle_between(d1, d2) -> float:
    """Counterclockwise angle in [0, 2pi) turning ``d1`` into ``d2``."""
    return norm_angle(as_angle(d2) - as_angle(d1))


# -- constructions --------------------------------------------------------

def circumcircle(p0, p1, p2, tol: Tolerance = DEFAULT_TOL) -> Circle:
    b = _sub(p1, p0)
    c = _sub(p2, p0)
    det = 2.0 * _cross(b, c)
    scale = max(math.hypot(*b), math.hypot(*c), 1.0)
    if abs(det) <= tol.eps_len * scale:
        raise CollinearPoints("points are collinear")
    b2, c2 = _dot(b, b), _dot(c, c)
    ux = (c.y * b2 - b.y * c2) / det
    uy = (b.x * c2 - c.x * b2) / det
    center = Point(p0[0] + ux, p0[1] + uy)
    return Circle(center, math.hypot(ux, uy))


def arc_from_endpoint_tangent(u, v, t, tol: Tolerance = DEFAULT_TOL) -> Arc:
    """The unique arc or segment from ``u`` to ``v`` leaving ``u`` along ``t``."""
    u, v = Point(*u), Point(*v)
    w = _sub(v, u)
    wl = math.hypot(*w)
    if wl <= tol.eps_len:
        raise CoincidentEndpoints("endpoints coincide")
    td = unit(as_angle(t))
    perp = _rot90(td)
    k = _dot(w, perp)
    if abs(k) <= tol.eps_ang * wl:
        if _dot(w, td) > 0:
            return Arc.segment(u, v)
        raise DegenerateConfiguration("tangent points directly away from the other endpoint")
    s = _dot(w, w) / (2.0 * k)
    center = _add(u, _scale(perp, s))
    return Arc(Circle(center, abs(s)), u, v, s > 0)


def orthogonal_radius_bound(c1: Circle, c2: Circle) -> float:
    """Largest radius allowed by the slack argument for two crossing circles.

    With ``d = |r1 - r2| + eps`` the construction needs
    ``sqrt(r_i^2 + r^2) - r_i < eps / 2`` for both circles; the smaller
    radius is binding.
    """
    d = dist(c1.center, c2.center)
    eps = d - abs(c1.radius - c2.radius)
    rmin = min(c1.radius, c2.radius)
    return math.sqrt(eps * rmin + eps * eps / 4.0)


def orthogonal_enclosing_circle(a1: Arc, a2: Arc, shrink: float = 1.0 / 3.0,
                                radius: float | None = None,
                                tol: Tolerance = DEFAULT_TOL) -> Circle:
    """A small circle orthogonal to both arcs' circles around their crossing.

    The radius is ``shrink`` times :func:`orthogonal_radius_bound` unless
    ``radius`` is given, in which case it must not exceed that bound.
    The center lies at distance ``sqrt(r_i^2 + r^2)`` from each support
    center; of the two candidates the one nearer the crossing is used.
    """
    if a1.is_segment or a2.is_segment:
        raise NoProperIntersection("both arcs must be circular")
    c1, c2 = a1.support, a2.support
    if not 0.0 < shrink <= 1.0:
        raise ValueError("shrink must lie in (0, 1]")
    pts = circle_circle_intersections(c1, c2, tol)
    if len(pts) == 1:
        raise TouchingArcs("the arcs' circles touch")
    if not pts:
        raise NoProperIntersection("the arcs' circles do not meet")
    on_both = [x for x in pts if a1.contains(x, tol) and a2.contains(x, tol)]
    if len(on_both) != 1:
        raise NoProperIntersection(f"expected one crossing of the arcs, found {len(on_both)}")
    p = on_both[0]
    rmax = orthogonal_radius_bound(c1, c2)
    if radius is None:
        r = shrink * rmax
    else:
        if not 0.0 < radius <= rmax * (1.0 + 1e-12):
            raise ValueError(f"radius {radius} outside (0, {rmax}]")
        r = radius
    d1 = math.sqrt(c1.radius ** 2 + r * r)
    d2 = math.sqrt(c2.radius ** 2 + r * r)
    centers = circle_circle_intersections(Circle(c1.center, d1), Circle(c2.center, d2), tol)
    if not centers:
        raise DegenerateConfiguration("no admissible center")
    center = min(centers, key=lambda z: dist(z, p))
    return Circle(center, r)


def orthogonality_residual(c: Circle, other: Circle) -> float:
    """``r_i^2 + r^2 - d_i^2``; zero exactly when the circles are orthogonal."""
    d = dist(c.center, other.center)
    return other.radius ** 2 + c.radius ** 2 - d * d


def bounding_box(a: Arc) -> tuple[float, float, float, float]:
    """(xmin, ymin, xmax, ymax) of an arc."""
    xs = [a.p.x, a.q.x]
    ys = [a.p.y, a.q.y]
    if not a.is_segment:
        c, r = a.support.center, a.support.radius
        for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)):
            extreme = Point(c.x + r * dx, c.y + r * dy)
            if a.param(extreme) <= a.sweep:
                xs.append(extreme.x)
                ys.append(extreme.y)
    return min(xs), min(ys), max(xs), max(ys)


def scene_diameter(points: Sequence) -> float:
    if not points:
        return 0.0
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return math.hypot(max(xs) - min(xs), max(ys) - min(ys))
