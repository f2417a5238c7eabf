"""Constructing Lombardi drawings from realized line arrangements.

The restricted drawing puts the enclosing cycle on the disk circle,
every path on the orthogonal circle of its Poincare line, and every
crossing 4-cycle on a small circle orthogonal to both lines.  The full
drawing then adds gadget edges along their slot directions and short
straight stubs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..arrangement import CombinatorialDescription, EuclideanLine, as_description, describe, perturb_lines, relabel
from ..errors import (
    ConcurrentTriple,
    DegenerateConfiguration,
    DescriptionMismatch,
    DiameterChord,
    LombardiError,
    ParallelLines,
    SlotTangentMismatch,
)
from ..geom import (
    DEFAULT_TOL,
    TAU,
    Arc,
    Circle,
    Point,
    Tolerance,
    arc_from_endpoint_tangent,
    circle_circle_intersections,
    dist,
    orthogonal_enclosing_circle,
    orthogonal_radius_bound,
    scene_diameter,
    tangent_direction,
    unit,
    wrap_pi,
)
from ..hyperbolic import DiskModel, PoincareLine, hyperbolic_crossing_order, klein_to_poincare, lines_to_klein
from ..reduction import RotGraph, Role, build_core, build_full
from .model import LombardiDrawing


@dataclass(frozen=True)
class Construction:
    """A constructed drawing together with the circles it was built from."""

    graph: RotGraph
    drawing: LombardiDrawing
    disk: DiskModel
    lines: tuple[PoincareLine, ...]
    crossing_circles: dict[tuple[int, int], Circle]


def _between(circle: Circle, p: Point, q: Point, others: Sequence[Point],
             prefer_ccw: bool, tol: Tolerance) -> Arc:
    """The arc of ``circle`` from ``p`` to ``q`` holding none of ``others``."""
    for ccw in (prefer_ccw, not prefer_ccw):
        a = Arc(circle, p, q, ccw)
        if not any(a.contains(x, tol, interior=True) for x in others):
            return a
    raise DegenerateConfiguration("both arcs between two cycle vertices hold other vertices")


def _check_input(lines: Sequence[EuclideanLine], D, tol: Tolerance) -> tuple[list[EuclideanLine],
                                                                           CombinatorialDescription]:
    D = as_description(D)
    try:
        got = describe(lines, tol)
    except (ParallelLines, ConcurrentTriple) as exc:
        raise DescriptionMismatch(f"lines do not form a simple arrangement: {exc}") from None
    if got != D:
        raise DescriptionMismatch(f"lines realize {got.to_lists()}, not {D.to_lists()}")
    return relabel(lines, tol), D


def _crossing_radius(k: tuple[int, int], x: Point, crossings: dict, pls: Sequence[PoincareLine],
                     m: DiskModel, shrink: float) -> float:
    i, j = k
    bound = orthogonal_radius_bound(pls[i].support, pls[j].support)
    others = [dist(x, y) for kk, y in crossings.items() if kk != k]
    near = min(others) if others else math.inf
    to_lines = min((abs(dist(x, pl.support.center) - pl.support.radius)
                    for t, pl in enumerate(pls) if t not in k), default=math.inf)
    to_gamma = m.radius - dist(x, m.center)
    return min(shrink * bound, near / 3.0, to_lines / 3.0, to_gamma / 3.0)


def restricted_construction(lines: Sequence[EuclideanLine], D, tol: Tolerance = DEFAULT_TOL,
                            shrink: float = 1.0 / 3.0) -> Construction:
    lines, D = _check_input(lines, D, tol)
    n = D.n
    m, chords = lines_to_klein(lines, tol)
    try:
        pls = [klein_to_poincare(m, ch, tol) for ch in chords]
    except DiameterChord as exc:
        raise DegenerateConfiguration(str(exc)) from None
    order = hyperbolic_crossing_order(m, pls, tol)
    if not order.complete or order.description != D:
        raise DegenerateConfiguration("Poincare lines do not reproduce the description")

    crossings: dict[tuple[int, int], Point] = {}
    for i, j in itertools.combinations(range(n), 2):
        ai, aj = pls[i].arc, pls[j].arc
        pts = [x for x in circle_circle_intersections(ai.support, aj.support, tol)
               if m.disk.contains(x) and ai.contains(x, tol) and aj.contains(x, tol)]
        if len(pts) != 1:
            raise DegenerateConfiguration(f"lines {i + 1} and {j + 1} do not cross once in the disk")
        crossings[(i, j)] = pts[0]

    core = build_core(D)
    pos: dict[Role, Point] = {}
    for i, pl in enumerate(pls):
        pos[Role("CycleLeft", i + 1)] = pl.p
        pos[Role("CycleRight", i + 1)] = pl.q

    circles: dict[tuple[int, int], Circle] = {}
    for (i, j), x in crossings.items():
        r = _crossing_radius((i, j), x, crossings, pls, m, shrink)
        if r <= tol.eps_len * max(1.0, m.radius):
            raise DegenerateConfiguration(f"no room around the crossing of {i + 1} and {j + 1}")
        try:
            c = orthogonal_enclosing_circle(pls[i].arc, pls[j].arc, radius=r, tol=tol)
        except LombardiError as exc:
            raise DegenerateConfiguration(str(exc)) from None
        circles[(i + 1, j + 1)] = c
        for a, b in ((i, j), (j, i)):
            arc = pls[a].arc
            pts = sorted(circle_circle_intersections(arc.support, c, tol), key=arc.param)
            if len(pts) != 2:
                raise DegenerateConfiguration("crossing circle does not cut the line twice")
            pos[Role("PathLeft", a + 1, b + 1)] = pts[0]
            pos[Role("PathRight", a + 1, b + 1)] = pts[1]

    P = [pos[r] for r in core.roles]
    arcs: list[Arc] = []
    gamma_pts = [pos[Role(k, i)] for k in ("CycleLeft", "CycleRight") for i in range(1, n + 1)]
    for u, v, tag in core.edges:
        p, q = P[u], P[v]
        kind = tag.split("(")[0]
        if kind == "CycleGamma":
            arcs.append(_between(m.disk, p, q, [x for x in gamma_pts if x not in (p, q)], False, tol))
        elif kind == "Ei":
            i = int(tag[3:-1]) - 1
            arcs.append(pls[i].arc.complement())
        elif kind == "Path":
            i = int(tag[5:-1]) - 1
            arcs.append(Arc(pls[i].support, p, q, pls[i].arc.ccw))
        else:
            i, j = (int(s) for s in tag[len("CrossCycle("):-1].split(","))
            c = circles[(i, j)]
            four = [pos[Role(k, a, b)] for k in ("PathLeft", "PathRight") for a, b in ((i, j), (j, i))]
            arcs.append(_between(c, p, q, [x for x in four if x not in (p, q)], True, tol))
    drawing = LombardiDrawing(tuple(P), tuple(arcs))
    return Construction(core, drawing, m, tuple(pls), circles)


def construct_restricted(lines: Sequence[EuclideanLine], D, tol: Tolerance = DEFAULT_TOL) -> LombardiDrawing:
    """Lombardi drawing of the gadget-free graph ``build_core(D)``."""
    return restricted_construction(lines, D, tol).drawing


def _dart_angle(G: RotGraph, drawing: LombardiDrawing, e: int, v: int, tol: Tolerance) -> float:
    return tangent_direction(drawing.arcs[e], drawing.positions[v], tol)


def _slot_sign(core: RotGraph, drawing: LombardiDrawing, tol: Tolerance) -> int:
    """+1 if rotations turn counterclockwise in the drawing, -1 if mirrored."""
    signs = set()
    for v in range(core.num_vertices):
        rot = core.rotation[v]
        a0 = _dart_angle(core, drawing, rot[0], v, tol)
        a1 = _dart_angle(core, drawing, rot[1], v, tol)
        signs.add(1 if wrap_pi(a1 - a0) > 0 else -1)
    if len(signs) != 1:
        raise DegenerateConfiguration("core drawing mixes orientations")
    return signs.pop()


def stub_length(v: int, P: Sequence[Point], arcs: Sequence[Arc], incident: set[int],
                anchors: Sequence[int], per_dir: float, cap: float) -> float:
    """Length for stubs at ``v`` that keeps them clear of every other element.

    Half the distance to the nearest other anchor vertex or non-incident
    arc, at most ``cap``, and short enough that no incident arc can bend
    back onto the stub.
    """
    x = P[v]
    near = min((dist(x, P[w]) for w in anchors if w != v), default=math.inf)
    for e, a in enumerate(arcs):
        if e not in incident:
            near = min(near, a.distance(x))
    # an incident arc of radius rho leaving at angle beta from the stub
    # returns to the stub's ray only at distance 2 rho sin(beta)
    bend = math.inf
    for e in incident:
        a = arcs[e]
        if not a.is_segment:
            bend = min(bend, a.support.radius * math.sin(per_dir))
    return min(0.5 * near, cap, bend)


def full_construction(lines: Sequence[EuclideanLine], D, tol: Tolerance = DEFAULT_TOL,
                      min_clearance: float = 1e-8) -> Construction:
    """Full drawing; ``min_clearance`` (relative to the scene diameter) bounds
    how close an edge may pass to a foreign vertex before the input is
    declared degenerate."""
    base = restricted_construction(lines, D, tol)
    core, drawing = base.graph, base.drawing
    G = build_full(as_description(D))
    sign = _slot_sign(core, drawing, tol)
    n_core = core.num_vertices

    def slot_angle(v: int, e: int) -> float:
        rot = G.rotation[v]
        k = rot.index(e)
        a0 = _dart_angle(core, drawing, rot[0], v, tol)
        return a0 + sign * TAU * k / len(rot)

    P = list(drawing.positions)
    arcs: dict[int, Arc] = dict(enumerate(drawing.arcs))
    stubs = []
    for e, (u, v, tag) in enumerate(G.edges):
        if e < core.num_edges:
            continue
        if tag == "StubEdge":
            stubs.append(e)
            continue
        tu, tv = slot_angle(u, e), slot_angle(v, e)
        try:
            a = arc_from_endpoint_tangent(P[u], P[v], unit(tu), tol)
        except LombardiError as exc:
            raise DegenerateConfiguration(f"gadget edge {e}: {exc}") from None
        got = tangent_direction(a, P[v], tol)
        miss = abs(wrap_pi(got - tv))
        if miss > 1e3 * tol.eps_ang:
            raise SlotTangentMismatch(f"gadget edge {e} ({tag}) arrives off its slot by {miss:.3e} rad")
        arcs[e] = a

    diam = scene_diameter(P)
    cap = 0.05 * diam
    drawn = [arcs[e] for e in sorted(arcs)]
    anchors = range(n_core)
    lengths: dict[int, float] = {}
    for e in stubs:
        u, w, _ = G.edges[e]
        if u not in lengths:
            incident = {f for f in G.rotation[u] if f < len(drawn)}
            lengths[u] = stub_length(u, P, drawn, incident, anchors, TAU / G.degree(u), cap)
            if lengths[u] < min_clearance * diam:
                raise DegenerateConfiguration(
                    f"an edge passes within {lengths[u]:.3e} of vertex {u}; perturb the lines")
        d = unit(slot_angle(u, e))
        end = Point(P[u].x + lengths[u] * d.x, P[u].y + lengths[u] * d.y)
        P.append(end)
        if len(P) - 1 != w:
            raise RuntimeError("stub vertex ids out of order")
        arcs[e] = Arc.segment(P[u], end)
    full = LombardiDrawing(tuple(P), tuple(arcs[e] for e in range(G.num_edges)))
    return Construction(G, full, base.disk, base.lines, base.crossing_circles)


def construct_full(lines: Sequence[EuclideanLine], D, tol: Tolerance = DEFAULT_TOL) -> LombardiDrawing:
    """Lombardi drawing of ``build_full(D)``."""
    return full_construction(lines, D, tol).drawing


def construct_with_retry(lines: Sequence[EuclideanLine], D, full: bool = True, seed: int = 0,
                         attempts: int = 20, scale: float = 1e-5,
                         tol: Tolerance = DEFAULT_TOL) -> tuple[Construction, list[EuclideanLine]]:
    """Construct, perturbing the lines (keeping ``D``) after a degenerate attempt.

    The relative perturbation starts at ``scale`` and grows tenfold per
    attempt up to 1e-2.  Returns the construction and the lines it was
    built from, which is ``lines`` itself unless a perturbation was needed.
    """
    build = full_construction if full else restricted_construction
    rng = np.random.default_rng(seed)
    current = lines
    for attempt in range(attempts + 1):
        try:
            return build(current, D, tol), current
        except DegenerateConfiguration:
            if attempt == attempts:
                raise
            current = perturb_lines(lines, D, rng, min(scale * 10 ** attempt, 1e-2), tol)
    raise AssertionError("unreachable")
