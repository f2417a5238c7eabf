from __future__ import annotations

import math

import numpy as np
import pytest

from lombardi.arrangement import describe, random_lines
from lombardi.drawing import (
    AngleAssignment,
    LombardiDrawing,
    apply_inversion,
    bad_edge_pairs,
    check_circle_forcing,
    full_construction,
    validate,
)
from lombardi.errors import CoverageMismatch, VertexAtCenter
from lombardi.geom import Arc, Circle, Point


def nudge(drawing, G, v, frac, angle=0.3):
    d = frac * drawing.diameter
    p = drawing.positions[v]
    return drawing.moved(G, v, Point(p.x + d * math.cos(angle), p.y + d * math.sin(angle)))


def test_constructed_drawing_passes(full2):
    rep = validate(full2.graph, full2.drawing)
    assert rep.passed
    assert set(rep.checks) == {"edge-endpoints", "distinct-vertices", "vertex-on-edge",
                               "edge-pair-overlap", "angular-resolution", "rotation-match"}
    assert rep.orientation in ("ccw", "cw")


def test_moved_vertex_breaks_angular_resolution(full2):
    G, d = full2.graph, full2.drawing
    v = next(k for k in range(G.num_vertices) if G.degree(k) == 8)
    rep = validate(G, nudge(d, G, v, 1e-3))
    assert not rep.passed
    assert "angular-resolution" in rep.failures
    assert rep.checks["angular-resolution"].residual > 1e-9


def test_swapped_darts_break_rotation(full2):
    G, d = full2.graph, full2.drawing
    rot = list(G.rotation[0])
    rot[0], rot[1] = rot[1], rot[0]
    rep = validate(G.with_rotation(0, rot), d)
    assert "rotation-match" in rep.failures


def test_mirrored_drawing_needs_relaxed_orientation(full2):
    G, d = full2.graph, full2.drawing
    flip = LombardiDrawing(
        tuple(Point(p.x, -p.y) for p in d.positions),
        tuple(Arc.segment((a.p.x, -a.p.y), (a.q.x, -a.q.y)) if a.is_segment
              else Arc(Circle(Point(a.support.center.x, -a.support.center.y), a.support.radius),
                       (a.p.x, -a.p.y), (a.q.x, -a.q.y), not a.ccw) for a in d.arcs))
    loose = validate(G, flip)
    assert loose.passed and loose.orientation != validate(G, d).orientation
    strict = validate(G, flip, strict_orientation=True)
    assert "rotation-match" in strict.failures


def test_theta_assignment(full2):
    G, d = full2.graph, full2.drawing
    rep = validate(G, d, AngleAssignment.uniform(G))
    assert rep.passed and "theta-match" in rep.checks
    v = next(k for k in range(G.num_vertices) if G.degree(k) == 8)
    skew = [math.pi / 4 + 0.1, math.pi / 4 - 0.1] + [math.pi / 4] * 6
    rep = validate(G, d, AngleAssignment.from_mapping(G, {v: skew}))
    assert rep.failures == ["theta-match"]
    assert rep.checks["theta-match"].residual == pytest.approx(0.1, abs=1e-9)


def test_theta_must_sum_to_full_turn(full2):
    G = full2.graph
    with pytest.raises(ValueError):
        validate(G, full2.drawing, AngleAssignment.from_mapping(G, {0: [0.5] * 8}))


def test_coverage_mismatch(full2, core2):
    with pytest.raises(CoverageMismatch):
        validate(full2.graph, core2.drawing)


def test_coincident_vertices_and_vertex_on_edge(core2):
    G, d = core2.graph, core2.drawing
    # put vertex 0 on top of vertex 1
    rep = validate(G, d.moved(G, 0, d.positions[1]))
    assert "distinct-vertices" in rep.failures
    # put vertex 0 on the middle of an edge it is not incident to
    e = next(k for k, ed in enumerate(G.edges) if 0 not in ed[:2])
    rep = validate(G, d.moved(G, 0, d.arcs[e].midpoint()))
    assert "vertex-on-edge" in rep.failures


def test_overlapping_edges_detected(core2):
    G, d = core2.graph, core2.drawing
    # redraw an edge on top of its neighbour's support, going the long way round
    e = 0
    a = d.arcs[e]
    arcs = list(d.arcs)
    arcs[e] = Arc(a.support, a.p, a.q, not a.ccw)
    rep = validate(G, LombardiDrawing(d.positions, tuple(arcs)))
    assert "edge-pair-overlap" in rep.failures


def test_strict_pairs_reports_double_contacts():
    lines = random_lines(3, 0)
    c = full_construction(lines, describe(lines))
    G, d = c.graph, c.drawing
    assert validate(G, d).passed
    strict = bad_edge_pairs(G, d, strict=True)
    rep = validate(G, d, strict_pairs=True)
    assert len(strict) > 0 and rep.failures == ["edge-pair-overlap"]
    assert bad_edge_pairs(G, d) == []
    tags = {(G.edges[i].tag, G.edges[j].tag) for i, j, *_ in strict}
    assert any(a.startswith("Ei") and b.startswith("Gadget(gamma") for a, b in tags)


# -- inversion ------------------------------------------------------------

def random_circles(drawing, count, seed):
    rng = np.random.default_rng(seed)
    X = np.asarray(drawing.positions)
    lo, hi = X.min(axis=0), X.max(axis=0)
    span = float(np.linalg.norm(hi - lo))
    out = []
    while len(out) < count:
        c = Point(*rng.uniform(lo - 0.2 * span, hi + 0.2 * span))
        if min(a.distance(c) for a in drawing.arcs) < 1e-3 * span:
            continue
        out.append(Circle(c, float(rng.uniform(0.05, 1.0)) * span))
    return out


def test_inversion_in_disk_keeps_validity(full2):
    G, d = full2.graph, full2.drawing
    inv = apply_inversion(d, full2.disk.disk)
    assert validate(G, inv).passed
    back = apply_inversion(inv, full2.disk.disk)
    assert back.max_deviation(d) < 1e-10


def test_inversion_preserves_verdicts(full2):
    G, d = full2.graph, full2.drawing
    bad = d.moved(G, 0, Point(d.positions[0].x + 1e-3 * d.diameter, d.positions[0].y))
    for c in random_circles(d, 10, 3):
        assert validate(G, apply_inversion(d, c)).passed
        assert not validate(G, apply_inversion(bad, c)).passed


def test_inversion_keeps_cycles_on_circles(full2):
    G, d = full2.graph, full2.drawing
    for c in random_circles(d, 5, 8):
        inv = apply_inversion(d, c)
        for plan in G.plans:
            assert check_circle_forcing(G, inv, plan.cycle)


def test_vertex_at_center_rejected(full2):
    d = full2.drawing
    with pytest.raises(VertexAtCenter):
        apply_inversion(d, Circle(d.positions[3], 1.0))
