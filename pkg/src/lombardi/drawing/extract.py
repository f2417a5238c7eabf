"""Reading the pseudoline arrangement back out of a drawing."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..arrangement import CombinatorialDescription
from ..errors import CircleFitFailure, NonOrthogonalSupport
from ..geom import DEFAULT_TOL, Arc, Circle, Point, Tolerance
from ..hyperbolic import DiskModel, PoincareLine, hyperbolic_crossing_order, orthogonality_residual
from ..reduction import Role, RotGraph, gamma_sequence
from .model import LombardiDrawing, apply_inversion


def fit_circle(points: Sequence, rel_tol: float = 1e-7) -> Circle:
    """Least-squares circle through ``points``; fails unless every point is within
    ``rel_tol`` times the fitted radius of it."""
    X = np.asarray(points, dtype=float)
    if len(X) < 3:
        raise CircleFitFailure("need three points to fit a circle")
    mu = X.mean(axis=0)
    s = float(np.abs(X - mu).max()) or 1.0
    Y = (X - mu) / s
    A = np.column_stack([2 * Y, np.ones(len(Y))])
    b = (Y ** 2).sum(axis=1)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    cx, cy, k = sol
    r2 = k + cx * cx + cy * cy
    if not np.isfinite(r2) or r2 <= 0:
        raise CircleFitFailure("points do not determine a circle")
    r = float(np.sqrt(r2))
    res = np.abs(np.hypot(Y[:, 0] - cx, Y[:, 1] - cy) - r)
    if float(res.max()) > rel_tol * r or r > 1e8:
        raise CircleFitFailure(f"points are off the best circle by up to {res.max() * s:.3e}")
    return Circle(Point(mu[0] + s * cx, mu[1] + s * cy), r * s)


def _path_roles(G: RotGraph, i: int) -> list[Role]:
    inner = [r for r in G.roles if r.on_path and r.i == i]
    return [Role("CycleLeft", i)] + inner + [Role("CycleRight", i)]


def extract_description(G: RotGraph, drawing: LombardiDrawing, tol: Tolerance = DEFAULT_TOL,
                        fit_tol: float = 1e-7, orth_tol: float = 1e-6) -> CombinatorialDescription:
    """The description encoded by a drawing of ``build_core(D)`` or ``build_full(D)``.

    The enclosing cycle's circle is read as a Poincare disk (after an
    inversion in it when the paths run outside), each path's circle as a
    hyperbolic line, and their crossing order is returned.
    """
    drawing.require_cover(G)
    n = G.n
    pos = drawing.positions
    gamma = fit_circle([pos[G.vertex(r)] for r in gamma_sequence(n)], fit_tol)
    inner = [pos[v] for v, r in enumerate(G.roles) if r.on_path]
    outside = sum(1 for x in inner if not gamma.contains(x))
    if outside * 2 > len(inner):
        drawing = apply_inversion(drawing, gamma, tol)
        pos = drawing.positions
    m = DiskModel(gamma)
    pls = []
    for i in range(1, n + 1):
        roles = _path_roles(G, i)
        c = fit_circle([pos[G.vertex(r)] for r in roles], fit_tol)
        res = orthogonality_residual(m, c)
        if abs(res) > orth_tol * max(1.0, (c.radius / gamma.radius) ** 2):
            raise NonOrthogonalSupport(f"path {i} lies on a circle not orthogonal to the disk ({res:.3e})")
        p, q = pos[G.vertex(roles[0])], pos[G.vertex(roles[-1])]
        arc = Arc(c, p, q, True)
        if not gamma.contains(arc.midpoint()):
            arc = Arc(c, p, q, False)
        pls.append(PoincareLine(arc))
    order = hyperbolic_crossing_order(m, pls, tol)
    if not order.complete:
        raise NonOrthogonalSupport(f"paths {sorted(map(sorted, order.missing))} never cross inside the disk")
    return order.description
