from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lombardi.arrangement import EuclideanLine, describe, random_lines
from lombardi.errors import DiameterChord, InvalidPoincareLine, ParallelLines
from lombardi.geom import Arc, Circle, Point, circle_circle_intersections
from lombardi.hyperbolic import (
    DiskModel,
    KleinChord,
    PoincareLine,
    hyperbolic_crossing_order,
    klein_crossing_order,
    klein_to_poincare,
    lines_to_klein,
    lines_to_poincare,
    orthogonality_residual,
    poincare_to_klein,
)

UNIT = DiskModel(Circle(Point(0, 0), 1.0))


def test_klein_to_poincare_quarter_chord():
    pl = klein_to_poincare(UNIT, KleinChord(Point(1, 0), Point(0, 1)))
    assert math.dist(pl.support.center, (1, 1)) < 1e-15
    assert pl.support.radius == pytest.approx(1.0, abs=1e-15)
    # oracle: |z|^2 = 1 + R^2 for an orthogonal circle
    assert abs(math.dist(pl.support.center, (0, 0)) ** 2 - 1 - pl.support.radius ** 2) < 1e-14
    assert UNIT.disk.contains(pl.arc.midpoint())


def test_klein_to_poincare_mirror_chord():
    pl = klein_to_poincare(UNIT, KleinChord(Point(0, 1), Point(-1, 0)))
    assert math.dist(pl.support.center, (-1, 1)) < 1e-15
    assert pl.support.radius == pytest.approx(1.0, abs=1e-15)


def test_diameter_rejected():
    with pytest.raises(DiameterChord):
        klein_to_poincare(UNIT, KleinChord(Point(1, 0), Point(-1, 0)))


def test_ideal_points_copied_bitwise():
    p = Point(math.cos(0.3), math.sin(0.3))
    q = Point(math.cos(2.9), math.sin(2.9))
    pl = klein_to_poincare(UNIT, KleinChord(p, q))
    assert pl.p == p and pl.q == q
    back = poincare_to_klein(UNIT, pl)
    assert back.p == p and back.q == q


def test_poincare_to_klein_near_diameter():
    eps = 1e-3
    p = Point(math.cos(eps), math.sin(eps))
    q = Point(-math.cos(eps), math.sin(eps))
    pl = klein_to_poincare(UNIT, KleinChord(q, p))
    assert pl.support.radius > 1e2
    ch = poincare_to_klein(UNIT, pl)
    assert (ch.p, ch.q) == (q, p)


def test_off_boundary_endpoints_rejected():
    c = Circle(Point(1, 1), 1.0)
    bad = PoincareLine(Arc(c, Point(1, 0), Point(0.5, 1 - math.sqrt(0.75)), False))
    with pytest.raises(InvalidPoincareLine):
        poincare_to_klein(UNIT, bad)


def test_three_lines_transfer():
    lines = [EuclideanLine(2, 0), EuclideanLine(1, 1), EuclideanLine(0, 3)]
    m, chords = lines_to_klein(lines)
    for x in ((1, 2), (1.5, 3), (2, 3)):
        assert m.disk.contains(x)
    for ch in chords:
        assert m.on_boundary(ch.p) and m.on_boundary(ch.q)
    want = [[2, 3], [1, 3], [1, 2]]
    assert klein_crossing_order(m, chords).description.to_lists() == want
    pls = [klein_to_poincare(m, ch) for ch in chords]
    assert hyperbolic_crossing_order(m, pls).description.to_lists() == want
    # brute-force oracle: intersect supports, keep points inside the disk, sort by angle on each arc
    for i, pl in enumerate(pls):
        hits = []
        for j, other in enumerate(pls):
            if i == j:
                continue
            inside = [x for x in circle_circle_intersections(pl.support, other.support) if m.disk.contains(x)]
            assert len(inside) == 1
            hits.append((pl.arc.param(inside[0]), j + 1))
        assert [j for _, j in sorted(hits)] == want[i]


def test_two_lines_disk_holds_the_crossing():
    m, chords = lines_to_klein([EuclideanLine(0, 0), EuclideanLine(1, 0)])
    assert m.disk.contains((0, 0))
    assert klein_crossing_order(m, chords).description.to_lists() == [[2], [1]]


def test_parallel_lines_rejected():
    with pytest.raises(ParallelLines):
        lines_to_klein([EuclideanLine(0, 0), EuclideanLine(0, 1)])


def test_crossing_order_reports_missing_pairs():
    a = klein_to_poincare(UNIT, KleinChord(Point(1, 0), Point(0, 1)))
    b = klein_to_poincare(UNIT, KleinChord(Point(-1, 0), Point(0, -1)))
    order = hyperbolic_crossing_order(UNIT, [a, b])
    assert not order.complete and order.missing == {frozenset({1, 2})}
    c = klein_to_poincare(UNIT, KleinChord(Point(math.cos(-0.5), math.sin(-0.5)), Point(0, 1)))
    d = klein_to_poincare(UNIT, KleinChord(Point(math.cos(2.0), math.sin(2.0)), Point(1, 0)))
    assert hyperbolic_crossing_order(UNIT, [c, d]).description.to_lists() == [[2], [1]]


@given(st.integers(2, 6), st.integers(0, 2 ** 32 - 1))
def test_pattern_preserved_across_models(n, seed):
    lines = random_lines(n, seed)
    D = describe(lines)
    m, chords = lines_to_klein(lines)
    assert klein_crossing_order(m, chords).description == D
    m2, pls = lines_to_poincare(lines)
    assert hyperbolic_crossing_order(m2, pls).description == D
    for pl in pls:
        scale = max(1.0, (pl.support.radius / m2.radius) ** 2)
        assert abs(orthogonality_residual(m2, pl.support)) < 1e-9 * scale


@given(st.integers(2, 6), st.integers(0, 2 ** 32 - 1))
def test_disk_leaves_a_margin_around_crossings(n, seed):
    lines = random_lines(n, seed)
    m, _ = lines_to_klein(lines)
    for a, b in itertools.combinations(lines, 2):
        x = a.crossing_x(b)
        assert math.dist((x, a.y(x)), m.center) <= 0.9 * m.radius
