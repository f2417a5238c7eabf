"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from lombardi import io
from lombardi.arrangement import describe, random_lines
from lombardi.cli import main
from lombardi.drawing import (
    apply_inversion,
    check_circle_forcing,
    check_midpoint_on_circle,
    construct_with_retry,
    extract_description,
    validate,
)
from lombardi.geom import Arc, Circle, Point, circle_circle_intersections, orthogonal_enclosing_circle
from lombardi.hyperbolic import (
    hyperbolic_crossing_order,
    klein_crossing_order,
    klein_to_poincare,
    lines_to_klein,
)
from lombardi.reduction import build_core, build_full
from triangle_oracle import forcing_triangle

SEEDS = range(25)
SIZES = (2, 3, 4, 5)


@pytest.fixture
def verdict(capsys):
    def say(k: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}")
    return say


@pytest.fixture(scope="module")
def sweep():
    """Every (n, seed) instance drawn once; shared by several criteria."""
    t0 = time.perf_counter()
    out = []
    for n in SIZES:
        for seed in SEEDS:
            lines = random_lines(n, seed)
            D = describe(lines)
            c, used = construct_with_retry(lines, D, seed=seed)
            rep = validate(c.graph, c.drawing)
            got = extract_description(c.graph, c.drawing)
            out.append(dict(n=n, seed=seed, lines=lines, D=D, c=c, perturbed=used is not lines,
                            rep=rep, got=got))
    return out, time.perf_counter() - t0


def test_1_count_laws(verdict):
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 9):
        D = describe(random_lines(n, n))
        core, full = build_core(D), build_full(D)
        deg_core = {len(r) for r in core.rotation}
        if (core.num_vertices, core.num_edges, deg_core) != (2 * n * n, 4 * n * n, {4}):
            bad.append(("core", n))
        gadget = (n + 1) * (2 * n - 3) + n * (n - 1) // 2
        stubs = 8 * n * n * (2 * n - 3) - 2 * gadget
        non_stub = {len(full.rotation[v]) for v, r in enumerate(full.roles) if not r.is_stub}
        stub_deg = {len(full.rotation[v]) for v, r in enumerate(full.roles) if r.is_stub}
        counted_stubs = sum(1 for r in full.roles if r.is_stub)
        if (non_stub, stub_deg, counted_stubs) != ({8 * n - 8}, {1}, stubs):
            bad.append(("full-degrees", n))
        if (full.num_vertices, full.num_edges) != (2 * n * n + stubs, 4 * n * n + gadget + stubs):
            bad.append(("full-size", n))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1.0
    verdict(1, ok, f"count laws n=2..8 exact, {dt:.3f} s (limit 1 s); mismatches {bad}")
    assert ok


def test_2_round_trip(sweep, verdict):
    runs, dt = sweep
    fails = [(r["n"], r["seed"]) for r in runs
             if not (r["rep"].passed and r["rep"].checks["angular-resolution"].residual < 1e-9
                     and r["got"] == r["D"])]
    worst = max(r["rep"].checks["angular-resolution"].residual for r in runs)
    perturbed = [(r["n"], r["seed"]) for r in runs if r["perturbed"]]
    ok = not fails and dt < 60.0
    verdict(2, ok, f"{len(runs)} round trips, {len(fails)} failures, worst angle residual {worst:.2e} rad, "
                   f"{dt:.1f} s (limit 60 s); perturbed inputs {perturbed}")
    assert ok


def test_3_model_transfer(sweep, verdict):
    runs, _ = sweep
    bad = []
    for r in runs:
        m, chords = lines_to_klein(r["lines"])
        klein = klein_crossing_order(m, chords).description
        pls = [klein_to_poincare(m, ch) for ch in chords]
        poincare = hyperbolic_crossing_order(m, pls).description
        if not r["D"] == klein == poincare:
            bad.append((r["n"], r["seed"]))
    verdict(3, not bad, f"Euclidean = Klein = Poincare descriptions on {len(runs)} arrangements; mismatches {bad}")
    assert not bad


def test_4_orthogonal_enclosing_circle(verdict):
    rng = np.random.default_rng(2024)
    worst, bad, done = 0.0, 0, 0
    while done < 500:
        c1 = Circle(Point(*rng.uniform(-10, 10, 2)), float(rng.uniform(0.1, 10)))
        r2 = float(rng.uniform(0.1, 10))
        lo, hi = abs(c1.radius - r2), c1.radius + r2
        d = float(rng.uniform(lo, hi))
        t = rng.uniform(0, 2 * math.pi)
        c2 = Circle(Point(c1.center.x + d * math.cos(t), c1.center.y + d * math.sin(t)), r2)
        pts = circle_circle_intersections(c1, c2)
        if len(pts) != 2 or math.dist(*pts) < 1e-6:
            continue
        p = pts[int(rng.integers(2))]
        arcs = []
        for c in (c1, c2):
            # short arc around p that stays clear of the other intersection
            gap = abs(math.remainder(c.angle_of(pts[0]) - c.angle_of(pts[1]), 2 * math.pi))
            half = min(0.1, 0.4 * gap)
            arcs.append(Arc.from_angles(c, c.angle_of(p) - half, c.angle_of(p) + half))
        c = orthogonal_enclosing_circle(*arcs)
        for ci in (c1, c2):
            dist = math.dist(c.center, ci.center)
            res = abs(ci.radius ** 2 + c.radius ** 2 - dist ** 2) / max(1.0, ci.radius ** 2)
            worst = max(worst, res)
        inside = [c.contains(x) for x in pts]
        if worst >= 1e-10 or inside != [x == p for x in pts]:
            bad += 1
        done += 1
    ok = bad == 0
    verdict(4, ok, f"500 circle pairs, worst scaled orthogonality residual {worst:.2e} (limit 1e-10), "
                   f"{bad} failures")
    assert ok


def test_5_forcing_probes(sweep, verdict):
    rng = np.random.default_rng(6)
    tri_bad = 0
    for _ in range(100):
        alpha = float(rng.uniform(0, math.pi / 2))
        if not check_midpoint_on_circle(forcing_triangle(alpha, rng)):
            tri_bad += 1
    runs, _ = sweep
    cyc_bad, total = [], 0
    for r in runs:
        G, d = r["c"].graph, r["c"].drawing
        for plan in G.plans:
            total += 1
            if not check_circle_forcing(G, d, plan.cycle):
                cyc_bad.append((r["n"], r["seed"], plan.cycle_id))
    ok = tri_bad == 0 and not cyc_bad
    verdict(5, ok, f"midpoint probe {100 - tri_bad}/100 triangles; circle forcing {total - len(cyc_bad)}/{total} "
                   f"cycles")
    assert ok


def _inversion_circles(d, count, rng, margin=0.05):
    """Random circles whose centers keep ``margin`` times the span from every edge.

    Centers closer to the drawing distort relative scales enough to push
    the smallest n = 5 features below the default length tolerance.
    """
    X = np.asarray(d.positions)
    lo, hi = X.min(axis=0), X.max(axis=0)
    span = float(np.linalg.norm(hi - lo))
    out = []
    while len(out) < count:
        c = Point(*rng.uniform(lo - 0.2 * span, hi + 0.2 * span))
        if min(a.distance(c) for a in d.arcs) < margin * span:
            continue
        out.append(Circle(c, float(rng.uniform(0.05, 1.0)) * span))
    return out


def test_6_inversion_invariance(sweep, verdict):
    runs, _ = sweep
    rng = np.random.default_rng(66)
    cases = []
    for n in SIZES:
        r = next(x for x in runs if x["n"] == n)
        cases.append((f"n={n}", r["c"].graph, r["c"].drawing, True))
    G2, d2 = cases[0][1], cases[0][2]
    v = next(k for k in range(G2.num_vertices) if G2.degree(k) > 1)
    p = d2.positions[v]
    cases.append(("n=2 tampered", G2, d2.moved(G2, v, Point(p.x + 1e-3 * d2.diameter, p.y)), False))
    changed, worst = [], 0.0
    for name, G, d, expect in cases:
        assert validate(G, d).passed is expect
        for c in _inversion_circles(d, 100, rng):
            inv = apply_inversion(d, c)
            if validate(G, inv).passed is not expect:
                changed.append(name)
            worst = max(worst, apply_inversion(inv, c).max_deviation(d))
    ok = not changed and worst < 1e-10
    verdict(6, ok, f"{100 * len(cases)} inversions over {len(cases)} drawings, verdict changes {len(changed)}, "
                   f"worst double-inversion error {worst:.2e} (limit 1e-10)")
    assert ok


def test_7_negative_controls(sweep, verdict):
    runs, _ = sweep
    r = next(x for x in runs if x["n"] == 2)
    G, d = r["c"].graph, r["c"].drawing
    assert validate(G, d).passed
    rng = np.random.default_rng(77)
    moved_pass, swap_pass = 0, 0
    for _ in range(100):
        v = int(rng.integers(G.num_vertices))
        t = rng.uniform(0, 2 * math.pi)
        p = d.positions[v]
        step = 1e-3 * d.diameter
        if validate(G, d.moved(G, v, Point(p.x + step * math.cos(t), p.y + step * math.sin(t)))).passed:
            moved_pass += 1
    multi = [v for v in range(G.num_vertices) if G.degree(v) >= 3]
    for _ in range(100):
        v = int(rng.choice(multi))
        i, j = rng.choice(G.degree(v), size=2, replace=False)
        rot = list(G.rotation[v])
        rot[i], rot[j] = rot[j], rot[i]
        rep = validate(G.with_rotation(v, rot), d)
        if "rotation-match" not in rep.failures:
            swap_pass += 1
    ok = moved_pass == 0 and swap_pass == 0
    verdict(7, ok, f"moved vertex: {moved_pass}/100 false passes; swapped darts: {swap_pass}/100 "
                   f"missed by rotation-match")
    assert ok


def _pipeline(root):
    root.mkdir()
    f = {k: str(root / k) for k in ("lines.json", "arr.json", "graph.json", "drawing.json",
                                    "report.json", "back.json", "round.json", "drawing.svg")}
    steps = [
        ["sample", "--n", "3", "--seed", "5", "--out", f["lines.json"]],
        ["describe", "--lines", f["lines.json"], "--out", f["arr.json"]],
        ["reduce", "--full", "--in", f["arr.json"], "--out", f["graph.json"]],
        ["draw", "--full", "--lines", f["lines.json"], "--arrangement", f["arr.json"], "--seed", "5",
         "--out", f["drawing.json"]],
        ["validate", "--graph", f["graph.json"], "--drawing", f["drawing.json"], "--out", f["report.json"]],
        ["extract", "--graph", f["graph.json"], "--drawing", f["drawing.json"], "--out", f["back.json"]],
        ["roundtrip", "--lines", f["lines.json"], "--seed", "5", "--out", f["round.json"]],
        ["render", "--graph", f["graph.json"], "--drawing", f["drawing.json"], "--out", f["drawing.svg"]],
    ]
    codes = [main(s) for s in steps]
    return codes, {k: (root / k).read_bytes() for k in f}


def test_8_cli_determinism(tmp_path, verdict):
    codes_a, files_a = _pipeline(tmp_path / "a")
    codes_b, files_b = _pipeline(tmp_path / "b")
    differ = [k for k in files_a if files_a[k] != files_b[k]]
    ok = codes_a == codes_b == [0] * len(codes_a) and not differ
    verdict(8, ok, f"two CLI pipeline runs, {len(files_a)} files, byte differences in {differ}, "
                   f"exit codes {codes_a}")
    assert ok
    assert io.read_arrangement(tmp_path / "a" / "back.json") == io.read_arrangement(tmp_path / "a" / "arr.json")
