"""Combinatorial descriptions of simple pseudoline arrangements.

A description lists, for every pseudoline, the other pseudolines in
the order it crosses them from left to right.  Pseudolines are
labelled 1..n bottom to top along a vertical line left of every
crossing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConcurrentTriple, InvalidDescription, ParallelLines
from .geom import DEFAULT_TOL, Tolerance
from .report import ValidationReport

#: Marker for the enclosing curve in augmented lists.
GAMMA = 0


@dataclass(frozen=True)
class CombinatorialDescription:
    lists: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "lists", tuple(tuple(int(j) for j in row) for row in self.lists))

    @property
    def n(self) -> int:
        return len(self.lists)

    def crossings(self, i: int) -> tuple[int, ...]:
        """Crossing order of pseudoline ``i`` (1-based)."""
        return self.lists[i - 1]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.lists]


def as_description(d) -> CombinatorialDescription:
    if isinstance(d, CombinatorialDescription):
        return d
    return CombinatorialDescription(tuple(tuple(r) for r in d))


@dataclass(frozen=True)
class EuclideanLine:
    """The non-vertical line ``y = a*x + b``."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("line coefficients must be finite")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    def y(self, x: float) -> float:
        return self.a * x + self.b

    def crossing_x(self, other: "EuclideanLine") -> float:
        return (other.b - self.b) / (self.a - other.a)


@dataclass(frozen=True)
class GammaDescription:
    base: CombinatorialDescription
    lists: tuple[tuple[int, ...], ...]
    gamma_cycle: tuple[int, ...]


def validate_simple(D) -> ValidationReport:
    """Structural checks only; realizability is not examined."""
    rep = ValidationReport()
    try:
        D = as_description(D)
    except (TypeError, ValueError) as exc:
        rep.add("well-formed", False, message=str(exc))
        return rep
    n = D.n
    rep.add("count", n >= 2, message="" if n >= 2 else f"need at least 2 pseudolines, got {n}")
    bad_len = [i + 1 for i, row in enumerate(D.lists) if len(row) != n - 1]
    rep.add("lengths", not bad_len, len(bad_len),
            f"lists {bad_len} do not have length {n - 1}" if bad_len else "")
    out_of_range = [i + 1 for i, row in enumerate(D.lists) if any(not 1 <= j <= n for j in row)]
    rep.add("index-range", not out_of_range, len(out_of_range),
            f"lists {out_of_range} hold indices outside 1..{n}" if out_of_range else "")
    selfref = [i + 1 for i, row in enumerate(D.lists) if (i + 1) in row]
    rep.add("no-self", not selfref, len(selfref),
            f"lists {selfref} contain their own index" if selfref else "")
    nonperm = [i + 1 for i, row in enumerate(D.lists)
               if sorted(row) != [j for j in range(1, n + 1) if j != i + 1]]
    rep.add("permutation", not nonperm, len(nonperm),
            f"lists {nonperm} are not permutations of the other indices" if nonperm else "")
    return rep


def _require_simple(D) -> CombinatorialDescription:
    rep = validate_simple(D)
    if not rep.passed:
        raise InvalidDescription("; ".join(rep.checks[k].message for k in rep.failures))
    return as_description(D)


def _check_lines(lines: Sequence[EuclideanLine], tol: Tolerance) -> None:
    for i, j in itertools.combinations(range(len(lines)), 2):
        ai, aj = lines[i].a, lines[j].a
        if abs(ai - aj) <= tol.eps_ang * max(1.0, abs(ai), abs(aj)):
            raise ParallelLines(f"lines {i} and {j} are parallel")


def label_order(lines: Sequence[EuclideanLine], tol: Tolerance = DEFAULT_TOL) -> tuple[int, ...]:
    """Input indices sorted bottom to top left of all crossings."""
    _check_lines(lines, tol)
    if len(lines) < 2:
        return tuple(range(len(lines)))
    xs = [lines[i].crossing_x(lines[j]) for i, j in itertools.combinations(range(len(lines)), 2)]
    probe = min(xs) - 1.0
    return tuple(sorted(range(len(lines)), key=lambda k: lines[k].y(probe)))


def describe(lines: Sequence[EuclideanLine], tol: Tolerance = DEFAULT_TOL) -> CombinatorialDescription:
    lines = list(lines)
    order = label_order(lines, tol)
    labelled = [lines[k] for k in order]
    n = len(labelled)
    rows = []
    for i in range(n):
        xs = sorted((labelled[i].crossing_x(labelled[j]), j + 1) for j in range(n) if j != i)
        for (x0, j0), (x1, j1) in zip(xs, xs[1:]):
            if abs(x1 - x0) <= tol.eps_len * max(1.0, abs(x0)):
                raise ConcurrentTriple(f"lines {i + 1}, {j0}, {j1} are concurrent")
        rows.append(tuple(j for _, j in xs))
    return CombinatorialDescription(tuple(rows))


def relabel(lines: Sequence[EuclideanLine], tol: Tolerance = DEFAULT_TOL) -> list[EuclideanLine]:
    """The lines reordered so that position ``i`` holds pseudoline ``i + 1``."""
    return [lines[k] for k in label_order(lines, tol)]


def extend_gamma(D) -> GammaDescription:
    D = _require_simple(D)
    lists = tuple((GAMMA,) + row + (GAMMA,) for row in D.lists)
    cycle = tuple(range(1, D.n + 1)) * 2
    return GammaDescription(D, lists, cycle)


def kendall_distance(u: Sequence[int], v: Sequence[int]) -> int:
    """Number of adjacent transpositions turning ``u`` into ``v``."""
    pos = {x: k for k, x in enumerate(v)}
    seq = [pos[x] for x in u]
    return sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])


def mismatch(D: CombinatorialDescription, E: CombinatorialDescription) -> int:
    return sum(kendall_distance(r, s) for r, s in zip(D.lists, E.lists))


def _score(a: np.ndarray, b: np.ndarray, target: CombinatorialDescription) -> float:
    try:
        got = describe([EuclideanLine(x, y) for x, y in zip(a, b)])
    except (ParallelLines, ConcurrentTriple):
        return math.inf
    return mismatch(got, target)


def realize_search(D, budget: int = 100_000, seed: int = 0,
                   patience: int = 200) -> list[EuclideanLine] | None:
    """Heuristic stretching by seeded hill climbing with restarts.

    ``budget`` counts candidate evaluations.  Returns lines in label
    order whose description equals ``D``, or ``None`` once the budget is
    spent; ``None`` says nothing about stretchability.
    """
    D = _require_simple(D)
    rng = np.random.default_rng(seed)
    n = D.n
    used = 0
    while used < budget:
        a = rng.normal(size=n)
        b = rng.normal(size=n)
        cur = _score(a, b, D)
        used += 1
        stale = 0
        while cur != 0 and used < budget and stale < patience:
            a2, b2 = a.copy(), b.copy()
            k = rng.integers(n)
            step = rng.choice([0.01, 0.1, 1.0])
            if rng.random() < 0.5:
                a2[k] += step * rng.normal()
            else:
                b2[k] += step * rng.normal()
            s = _score(a2, b2, D)
            used += 1
            if s <= cur:
                stale = 0 if s < cur else stale + 1
                a, b, cur = a2, b2, s
            else:
                stale += 1
        if cur == 0:
            return relabel([EuclideanLine(x, y) for x, y in zip(a, b)])
    return None


def random_lines(n: int, rng: np.random.Generator | int | None = None,
                 min_gap: float = 1e-3) -> list[EuclideanLine]:
    """Random simple arrangement of ``n`` lines in label order.

    Rejects draws whose crossings along some line come closer than
    ``min_gap`` or whose slopes are closer than ``min_gap``.
    """
    rng = np.random.default_rng(rng)
    while True:
        a = rng.uniform(-3.0, 3.0, size=n)
        b = rng.uniform(-3.0, 3.0, size=n)
        lines = [EuclideanLine(x, y) for x, y in zip(a, b)]
        if n > 1 and min(abs(x - y) for x, y in itertools.combinations(a, 2)) < min_gap:
            continue
        ok = True
        for i in range(n):
            xs = sorted(lines[i].crossing_x(lines[j]) for j in range(n) if j != i)
            if any(x1 - x0 < min_gap for x0, x1 in zip(xs, xs[1:])):
                ok = False
                break
        if ok:
            return relabel(lines)


def perturb_lines(lines: Sequence[EuclideanLine], D, rng: np.random.Generator | int | None,
                  scale: float = 1e-6, tol: Tolerance = DEFAULT_TOL,
                  tries: int = 1000) -> list[EuclideanLine]:
    """Jiggle slopes and intercepts by about ``scale`` (relative) keeping description ``D``."""
    D = as_description(D)
    rng = np.random.default_rng(rng)
    for _ in range(tries):
        out = [EuclideanLine(ln.a + scale * (1 + abs(ln.a)) * rng.normal(),
                             ln.b + scale * (1 + abs(ln.b)) * rng.normal()) for ln in lines]
        try:
            if describe(out, tol) == D:
                return out
        except (ParallelLines, ConcurrentTriple):
            pass
    raise InvalidDescription("no perturbation of the lines keeps the description")


def iter_lines(rows: Iterable) -> list[EuclideanLine]:
    return [r if isinstance(r, EuclideanLine) else EuclideanLine(*r) for r in rows]
