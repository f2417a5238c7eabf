from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lombardi.drawing import (
    ArcTriangle,
    LombardiDrawing,
    arc_triangle_angles,
    check_circle_forcing,
    check_midpoint_on_circle,
    validate,
)
from lombardi.errors import NotSimple, PreconditionViolated, SegmentEdge
from lombardi.geom import Arc, Circle, Point
from triangle_oracle import forcing_triangle

UNIT = Circle(Point(0, 0), 1.0)


def test_all_on_one_circle():
    # clockwise v0 = (-1,0), v1 = (0,1), v2 = (1,0); a1, opposite v1, is the lower semicircle
    v0, v1, v2 = Point(-1, 0), Point(0, 1), Point(1, 0)
    t = ArcTriangle((v0, v1, v2),
                    (Arc(UNIT, v1, v2, False), Arc(UNIT, v2, v0, False), Arc(UNIT, v0, v1, False)))
    assert t.arc(1).midpoint() == pytest.approx((0, -1), abs=1e-15)
    ang = arc_triangle_angles(t)
    for th in ang.theta:
        assert th == pytest.approx(math.pi, abs=1e-12)
    assert max(abs(f) for f in ang.phi) < 1e-10
    assert check_midpoint_on_circle(t)


def test_straight_triangle():
    O, A, B = Point(0, 0), Point(1, 0), Point(0, 1)
    # clockwise order O, B, A
    t = ArcTriangle((O, B, A), (Arc.segment(B, A), Arc.segment(A, O), Arc.segment(O, B)))
    ang = arc_triangle_angles(t)
    assert ang.theta == pytest.approx((math.pi / 2, math.pi / 4, math.pi / 4), abs=1e-12)
    # a chord meets its circumcircle at the inscribed angle of the opposite vertex,
    # and runs inside the circle, which is the positive side
    assert ang.phi == pytest.approx(ang.theta, abs=1e-12)
    assert all(f > 0 for f in ang.phi)


def test_collinear_vertices():
    a, b, c = Point(0, 0), Point(1, 0), Point(2, 0)
    bump = Circle(Point(1, -1), math.sqrt(2))
    t = ArcTriangle((a, b, c), (Arc.segment(b, c), Arc(bump, c, a, True), Arc.segment(a, b)))
    ang = arc_triangle_angles(t)
    assert ang.collinear and ang.phi is None and ang.formula_residuals() is None


def test_not_simple():
    a, b, c = Point(0, 0), Point(1, 0), Point(0, 1)
    # arc 2 wanders off and does not end at the opposite vertices
    t = ArcTriangle((a, c, b), (Arc.segment(c, b), Arc.segment(b, a), Arc.segment(a, Point(0, 2))))
    with pytest.raises(NotSimple):
        arc_triangle_angles(t)
    # two sides overlapping along a segment
    t = ArcTriangle((a, Point(2, 0), b), (Arc.segment(Point(2, 0), b), Arc.segment(b, a), Arc.segment(a, Point(2, 0))))
    with pytest.raises(NotSimple):
        arc_triangle_angles(t)


def test_formula_residuals_are_reported():
    t = forcing_triangle(0.3, np.random.default_rng(1))
    ang = arc_triangle_angles(t)
    plain, alt = ang.formula_residuals()
    assert len(plain) == len(alt) == 3
    assert ang.psi == pytest.approx((math.pi + sum(ang.theta)) / 2)
    assert ang.psi_alt == pytest.approx((sum(ang.theta) - math.pi) / 2)


def test_forcing_triangle_example():
    t = forcing_triangle(0.3, np.random.default_rng(0))
    th = arc_triangle_angles(t).theta
    assert th[0] == pytest.approx(math.pi + 0.3, abs=1e-9)
    assert th[1] == pytest.approx(math.pi + 0.3, abs=1e-9)
    assert th[2] == pytest.approx(math.pi, abs=1e-9)
    assert check_midpoint_on_circle(t)


def test_precondition_violated():
    O, A, B = Point(0, 0), Point(1, 0), Point(0, 1)
    t = ArcTriangle((O, B, A), (Arc.segment(B, A), Arc.segment(A, O), Arc.segment(O, B)))
    with pytest.raises(PreconditionViolated):
        check_midpoint_on_circle(t)


@settings(max_examples=100)
@given(st.floats(0, math.pi / 2, exclude_max=True), st.integers(0, 2 ** 32 - 1))
def test_forcing_triangles_put_v1_on_c1(alpha, seed):
    assert check_midpoint_on_circle(forcing_triangle(alpha, np.random.default_rng(seed)))


# -- forced cycles in drawings ---------------------------------------------

def test_circle_forcing_in_constructed_drawing(full2):
    G, d = full2.graph, full2.drawing
    ids = {p.cycle_id for p in G.plans}
    assert ids == {"gamma", "C1", "C2", "C1-2"}
    for plan in G.plans:
        assert check_circle_forcing(G, d, plan.cycle)


def test_circle_forcing_detects_displaced_vertex(full2):
    G, d = full2.graph, full2.drawing
    plan = next(p for p in G.plans if p.cycle_id == "C1")
    v = plan.cycle[2]
    p = d.positions[v]
    bad = d.moved(G, v, Point(p.x * (1 + 1e-3), p.y * (1 + 1e-3)))
    assert not check_circle_forcing(G, bad, plan.cycle)
    assert not validate(G, bad).passed


def test_circle_forcing_needs_an_arc(full2):
    G, d = full2.graph, full2.drawing
    plan = full2.graph.plans[0]
    e = G.edge_between(plan.cycle[-1], plan.cycle[0], ("CycleGamma", "Ei", "Path", "CrossCycle"))
    arcs = list(d.arcs)
    arcs[e] = Arc.segment(arcs[e].p, arcs[e].q)
    with pytest.raises(SegmentEdge):
        check_circle_forcing(G, LombardiDrawing(d.positions, tuple(arcs)), plan.cycle)
