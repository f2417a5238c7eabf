"""Checking a candidate drawing against a graph with rotation system.

All pairwise tests are vectorized with numpy; candidate pairs come from
bounding-box overlap so the cost stays near-linear for drawings whose
edges are short compared to the scene.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import cKDTree

from ..geom import DEFAULT_TOL, TAU, Tolerance, bounding_box
from ..reduction import RotGraph
from ..report import ValidationReport
from .model import AngleAssignment, LombardiDrawing


class _Edges:
    """Struct-of-arrays view of a drawing's edges."""

    def __init__(self, G: RotGraph, drawing: LombardiDrawing):
        P = np.asarray(drawing.positions, dtype=float).reshape(-1, 2)
        E = G.num_edges
        self.u = np.array([e.u for e in G.edges], dtype=int).reshape(E)
        self.v = np.array([e.v for e in G.edges], dtype=int).reshape(E)
        self.seg = np.array([a.is_segment for a in drawing.arcs], dtype=bool).reshape(E)
        self.c = np.zeros((E, 2))
        self.r = np.zeros(E)
        self.ccw = np.ones(E, dtype=bool)
        for k, a in enumerate(drawing.arcs):
            if not a.is_segment:
                self.c[k] = a.support.center
                self.r[k] = a.support.radius
                self.ccw[k] = a.ccw
        self.p = P[self.u] if E else np.zeros((0, 2))
        self.q = P[self.v] if E else np.zeros((0, 2))
        self.box = np.array([bounding_box(a) for a in drawing.arcs]).reshape(E, 4)
        # start angle and sweep of circular edges, measured counterclockwise
        a0 = np.arctan2(self.p[:, 1] - self.c[:, 1], self.p[:, 0] - self.c[:, 0])
        a1 = np.arctan2(self.q[:, 1] - self.c[:, 1], self.q[:, 0] - self.c[:, 0])
        self.start = np.where(self.ccw, a0, a1)
        self.sweep = np.mod(np.where(self.ccw, a1 - a0, a0 - a1), TAU)

    def on_arc(self, k: np.ndarray, x: np.ndarray, eps: float) -> np.ndarray:
        """Whether points ``x[m]`` (already on the support) lie on edge ``k[m]``."""
        seg = self.seg[k]
        p, q = self.p[k], self.q[k]
        d = q - p
        L2 = np.maximum(np.einsum("ij,ij->i", d, d), 1e-300)
        t = np.einsum("ij,ij->i", x - p, d) / L2
        L = np.sqrt(L2)
        on_seg = (t >= -eps / L) & (t <= 1 + eps / L)
        c, r = self.c[k], np.maximum(self.r[k], 1e-300)
        ang = np.arctan2(x[:, 1] - c[:, 1], x[:, 0] - c[:, 0])
        off = np.mod(ang - self.start[k], TAU)
        slack = eps / r
        on_circ = (off <= self.sweep[k] + slack) | (off >= TAU - slack)
        return np.where(seg, on_seg, on_circ)

    def distance(self, k: np.ndarray, x: np.ndarray) -> np.ndarray:
        """Distance from ``x[m]`` to edge ``k[m]``."""
        p, q = self.p[k], self.q[k]
        d = q - p
        L2 = np.maximum(np.einsum("ij,ij->i", d, d), 1e-300)
        t = np.clip(np.einsum("ij,ij->i", x - p, d) / L2, 0.0, 1.0)
        dseg = np.linalg.norm(x - (p + t[:, None] * d), axis=1)
        c, r = self.c[k], self.r[k]
        rel = x - c
        rho = np.linalg.norm(rel, axis=1)
        ang = np.arctan2(rel[:, 1], rel[:, 0])
        inside = np.mod(ang - self.start[k], TAU) <= self.sweep[k]
        ends = np.minimum(np.linalg.norm(x - p, axis=1), np.linalg.norm(x - q, axis=1))
        dcirc = np.where(inside, np.abs(rho - r), ends)
        return np.where(self.seg[k], dseg, dcirc)

    def tangents(self, k: np.ndarray, at_start: np.ndarray) -> np.ndarray:
        """Angle of the tangent pointing into edge ``k`` from one endpoint."""
        x = np.where(at_start[:, None], self.p[k], self.q[k])
        d = self.q[k] - self.p[k]
        seg_dir = np.where(at_start[:, None], d, -d)
        rel = x - self.c[k]
        rot = np.stack([-rel[:, 1], rel[:, 0]], axis=1)
        forward = np.where(self.ccw[k], 1.0, -1.0) * np.where(at_start, 1.0, -1.0)
        circ_dir = rot * forward[:, None]
        vec = np.where(self.seg[k][:, None], seg_dir, circ_dir)
        return np.arctan2(vec[:, 1], vec[:, 0])


def _candidate_pairs(box: np.ndarray, pad: float) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs ``i < j`` whose padded bounding boxes overlap (sort and sweep on x)."""
    E = len(box)
    if E < 2:
        return np.zeros(0, dtype=int), np.zeros(0, dtype=int)
    order = np.argsort(box[:, 0], kind="stable")
    xmin = box[order, 0]
    hi = np.searchsorted(xmin, box[order, 2] + pad, side="right")
    I, J = [], []
    for a in range(E):
        if hi[a] > a + 1:
            js = order[a + 1:hi[a]]
            I.append(np.full(len(js), order[a]))
            J.append(js)
    if not I:
        return np.zeros(0, dtype=int), np.zeros(0, dtype=int)
    I, J = np.concatenate(I), np.concatenate(J)
    keep = (box[I, 1] <= box[J, 3] + pad) & (box[J, 1] <= box[I, 3] + pad)
    I, J = I[keep], J[keep]
    return np.minimum(I, J), np.maximum(I, J)


def _support_points(S: _Edges, I: np.ndarray, J: np.ndarray, eps: float):
    """Up to two common points of the supports of edges I and J.

    Returns points (m, 2, 2), validity mask (m, 2) and a mask of pairs
    whose supports coincide.
    """
    m = len(I)
    pts = np.zeros((m, 2, 2))
    ok = np.zeros((m, 2), dtype=bool)
    same = np.zeros(m, dtype=bool)
    si, sj = S.seg[I], S.seg[J]

    # circle / circle
    cc = ~si & ~sj
    if cc.any():
        c1, c2 = S.c[I[cc]], S.c[J[cc]]
        r1, r2 = S.r[I[cc]], S.r[J[cc]]
        # measure from the smaller circle (see circle_circle_intersections)
        swap = r2 < r1
        c1, c2 = np.where(swap[:, None], c2, c1), np.where(swap[:, None], c1, c2)
        r1, r2 = np.where(swap, r2, r1), np.where(swap, r1, r2)
        dv = c2 - c1
        d = np.linalg.norm(dv, axis=1)
        coinc = (d <= eps) & (np.abs(r1 - r2) <= eps)
        dd = np.where(d > 0, d, 1.0)
        a = ((d - r2) * (d + r2) + r1 * r1) / (2 * dd)
        h2 = (r1 - a) * (r1 + a)
        # tangency within eps of the radius counts as one point
        meet = ~coinc & (d > 0) & (h2 >= -2 * eps * np.maximum(r1, r2))
        h = np.sqrt(np.maximum(h2, 0.0))
        e = dv / dd[:, None]
        base = c1 + a[:, None] * e
        perp = np.stack([-e[:, 1], e[:, 0]], axis=1)
        pts[cc, 0] = base + h[:, None] * perp
        pts[cc, 1] = base - h[:, None] * perp
        ok[cc, 0] = meet
        ok[cc, 1] = meet & (h > eps)
        same[cc] = coinc

    # circle / segment in either order
    for circ_first in (True, False):
        mask = (~si & sj) if circ_first else (si & ~sj)
        if not mask.any():
            continue
        C = I[mask] if circ_first else J[mask]
        L = J[mask] if circ_first else I[mask]
        c, r = S.c[C], S.r[C]
        p, d = S.p[L], S.q[L] - S.p[L]
        d = d / np.maximum(np.linalg.norm(d, axis=1), 1e-300)[:, None]
        t0 = np.einsum("ij,ij->i", c - p, d)
        foot = p + t0[:, None] * d
        delta = np.linalg.norm(c - foot, axis=1)
        h2 = (r - delta) * (r + delta)
        meet = h2 >= -2 * eps * r
        h = np.sqrt(np.maximum(h2, 0.0))
        pts[mask, 0] = foot + h[:, None] * d
        pts[mask, 1] = foot - h[:, None] * d
        ok[mask, 0] = meet
        ok[mask, 1] = meet & (h > eps)

    # segment / segment
    ss = si & sj
    if ss.any():
        p1, d1 = S.p[I[ss]], S.q[I[ss]] - S.p[I[ss]]
        p2, d2 = S.p[J[ss]], S.q[J[ss]] - S.p[J[ss]]
        den = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
        w = p2 - p1
        l1 = np.linalg.norm(d1, axis=1)
        l2 = np.linalg.norm(d2, axis=1)
        par = np.abs(den) <= 1e-12 * l1 * l2
        off = np.abs(w[:, 0] * d1[:, 1] - w[:, 1] * d1[:, 0]) / np.maximum(l1, 1e-300)
        t = (w[:, 0] * d2[:, 1] - w[:, 1] * d2[:, 0]) / np.where(par, 1.0, den)
        pts[ss, 0] = p1 + t[:, None] * d1
        ok[ss, 0] = ~par
        same[ss] = par & (off <= eps)
    return pts, ok, same


def _overlap(S: _Edges, I: np.ndarray, J: np.ndarray, eps: float) -> np.ndarray:
    """Whether edges on a common support share a piece of positive length."""
    out = np.zeros(len(I), dtype=bool)
    for m, (i, j) in enumerate(zip(I, J)):
        if S.seg[i]:
            d = S.q[i] - S.p[i]
            L = np.linalg.norm(d)
            d = d / L
            a = sorted((0.0, L))
            b = sorted((float(np.dot(S.p[j] - S.p[i], d)), float(np.dot(S.q[j] - S.p[i], d))))
            out[m] = min(a[1], b[1]) - max(a[0], b[0]) > eps
        else:
            slack = eps / S.r[i]

            def inside(theta, k):
                off = (theta - S.start[k]) % TAU
                return slack < off < S.sweep[k] - slack

            same_start = min((S.start[i] - S.start[j]) % TAU, (S.start[j] - S.start[i]) % TAU) <= slack
            out[m] = same_start or inside(S.start[j], i) or inside(S.start[i], j)
    return out


def _rotation_arrays(G: RotGraph, S: _Edges):
    deg = np.array([len(r) for r in G.rotation], dtype=int)
    verts = np.repeat(np.arange(G.num_vertices), deg)
    darts = np.array([e for r in G.rotation for e in r], dtype=int)
    at_start = S.u[darts] == verts if len(darts) else np.zeros(0, dtype=bool)
    starts = np.concatenate([[0], np.cumsum(deg)[:-1]]) if len(deg) else np.zeros(0, dtype=int)
    idx = np.arange(len(darts))
    group_start = np.repeat(starts, deg)
    group_len = np.repeat(deg, deg)
    nxt = group_start + (idx - group_start + 1) % np.maximum(group_len, 1)
    return deg, verts, darts, at_start, nxt


def bad_edge_pairs(G: RotGraph, drawing: LombardiDrawing, tol: Tolerance = DEFAULT_TOL,
                   strict: bool = False) -> list[tuple[int, int, int, int]]:
    """Edge pairs sharing a piece of positive length.

    With ``strict`` also pairs with more than one common point in total,
    counting each shared endpoint once.  Each entry is
    ``(i, j, extra, shared)``: the edges, their common points apart from
    shared endpoints (``-1`` for an overlap) and the number of shared
    endpoints.
    """
    P = np.asarray(drawing.positions, dtype=float).reshape(-1, 2)
    diam = drawing.diameter
    eps = tol.eps_len * (diam if diam > 0 else 1.0)
    S = _Edges(G, drawing)
    I, J = _candidate_pairs(S.box, 2 * eps)
    if not len(I):
        return []
    pts, ok, same = _support_points(S, I, J, eps)
    for s in (0, 1):
        x = pts[:, s]
        ok[:, s] &= S.on_arc(I, x, eps) & S.on_arc(J, x, eps)
    shared = np.zeros(len(I), dtype=int)
    for a in (S.u, S.v):
        for b in (S.u, S.v):
            common = a[I] == b[J]
            shared += common
            for s in (0, 1):
                near = np.linalg.norm(pts[:, s] - P[a[I]], axis=1) <= 1e3 * eps
                ok[:, s] &= ~(common & near)
    extra = ok.sum(axis=1)
    over = np.zeros(len(I), dtype=bool)
    if same.any():
        over[same] = _overlap(S, I[same], J[same], eps)
    extra = np.where(over, -1, extra)
    bad = over.copy()
    if strict:
        bad |= (extra >= 2) | ((extra >= 1) & (shared >= 1))
    return [(int(i), int(j), int(x), int(c)) for i, j, x, c in zip(I[bad], J[bad], extra[bad], shared[bad])]


def validate(G: RotGraph, drawing: LombardiDrawing, theta: AngleAssignment | None = None,
             tol: Tolerance = DEFAULT_TOL, strict_orientation: bool = False,
             strict_pairs: bool = False) -> ValidationReport:
    """Run the Lombardi checklist; lengths are judged relative to the scene diameter.

    By default two edges may cross any finite number of times and only a
    shared piece of positive length fails the pair check; ``strict_pairs``
    also rejects pairs with more than one common point.  The gadget graphs
    fail the strict reading in every drawing, since an outer gadget arc
    and an edge leaving the enclosing circle are forced to cross next to a
    shared endpoint.
    """
    drawing.require_cover(G)
    if theta is not None:
        theta.check(G, tol)
    rep = ValidationReport()
    P = np.asarray(drawing.positions, dtype=float).reshape(-1, 2)
    diam = drawing.diameter
    eps = tol.eps_len * (diam if diam > 0 else 1.0)
    S = _Edges(G, drawing)

    # arcs end at their vertices
    worst = 0.0
    for k, a in enumerate(drawing.arcs):
        u, v = S.u[k], S.v[k]
        worst = max(worst, float(np.linalg.norm(a.p - P[u])), float(np.linalg.norm(a.q - P[v])))
        if not a.is_segment:
            worst = max(worst, abs(a.support.residual(P[u])), abs(a.support.residual(P[v])))
    rep.add("edge-endpoints", worst <= eps, worst / max(diam, 1e-300),
            "" if worst <= eps else "some edge does not end at its vertices")

    # distinct vertices
    if len(P) > 1:
        dmin = float(cKDTree(P).query(P, k=2)[0][:, 1].min())
    else:
        dmin = math.inf
    rep.add("distinct-vertices", dmin > eps, dmin / max(diam, 1e-300) if math.isfinite(dmin) else 0.0,
            "" if dmin > eps else "two vertices share a point")

    # no edge passes through a foreign vertex
    closest = math.inf
    if G.num_edges and len(P):
        tree = cKDTree(P)
        centers = 0.5 * (S.box[:, :2] + S.box[:, 2:])
        radii = 0.5 * np.linalg.norm(S.box[:, 2:] - S.box[:, :2], axis=1) + 2 * eps
        hits = tree.query_ball_point(centers, radii)
        K = np.array([k for k, h in enumerate(hits) for _ in h], dtype=int)
        X = np.array([w for h in hits for w in h], dtype=int)
        if len(K):
            keep = (X != S.u[K]) & (X != S.v[K])
            K, X = K[keep], X[keep]
        if len(K):
            closest = float(S.distance(K, P[X]).min())
    rep.add("vertex-on-edge", closest > eps, closest / max(diam, 1e-300) if math.isfinite(closest) else 0.0,
            "" if closest > eps else "an edge passes through a vertex other than its endpoints")

    # pairs of edges meet at most once
    offenders = bad_edge_pairs(G, drawing, tol, strict_pairs)
    bad_pairs = len(offenders)
    what = "share more than one point" if strict_pairs else "overlap"
    rep.add("edge-pair-overlap", bad_pairs == 0, bad_pairs,
            "" if bad_pairs == 0 else f"{bad_pairs} edge pairs {what}, e.g. edges {offenders[0][:2]}")

    # angles and rotation
    deg, verts, darts, at_start, nxt = _rotation_arrays(G, S)
    ang = S.tangents(darts, at_start) if len(darts) else np.zeros(0)
    if theta is None:
        want = TAU / np.maximum(np.repeat(deg, deg), 1)
    else:
        want = np.array([x for row in theta.angles for x in row])
    d_ccw = np.mod(ang[nxt] - ang, TAU)
    d_cw = np.mod(ang - ang[nxt], TAU)
    multi = np.repeat(deg, deg) > 1

    def resid(d):
        r = np.abs(np.mod(d - want + math.pi, TAU) - math.pi)
        return float(r[multi].max()) if multi.any() else 0.0

    def rot_bad(d):
        if not len(d):
            return 0
        wind = np.bincount(verts, weights=d, minlength=G.num_vertices)
        tiny = np.bincount(verts, weights=(d <= tol.eps_ang) & multi, minlength=G.num_vertices)
        return int(((np.abs(wind - TAU) > 1e-6) & (deg > 1) | (tiny > 0)).sum())

    res_ccw, res_cw = resid(d_ccw), resid(d_cw)
    rb_ccw, rb_cw = rot_bad(d_ccw), rot_bad(d_cw)
    if strict_orientation or (rb_ccw, res_ccw) <= (rb_cw, res_cw):
        orient, res, rb = "ccw", res_ccw, rb_ccw
    else:
        orient, res, rb = "cw", res_cw, rb_cw
    rep.orientation = orient
    name = "angular-resolution" if theta is None else "theta-match"
    rep.add(name, res <= tol.eps_ang, res,
            "" if res <= tol.eps_ang else f"worst angle off by {res:.3e} rad")
    rep.add("rotation-match", rb == 0, rb,
            "" if rb == 0 else f"{rb} vertices disagree with the rotation system ({orient})")
    return rep
