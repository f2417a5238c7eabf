"""Gadget graphs with rotation systems built from a description.

``build_core`` produces the 4-regular graph on the enclosing cycle, the
pseudoline paths and the 4-cycles around crossings.  ``build_full``
adds the circle gadgets and closes every unused half-edge with a
degree-1 stub.

Rotations list incident edge ids in counterclockwise order.  The core
rotation used here is

* at a cycle vertex ``v_i^l`` / ``v_i^r``:
  (previous cycle edge, path edge, next cycle edge, ``e_i``);
* at a path vertex on pseudoline ``i`` crossing ``k``:
  (next path edge, cross edge to the left, previous path edge,
  cross edge to the right), where the left neighbour is ``v_{k,i}^l``
  if ``i < k`` and ``v_{k,i}^r`` otherwise.

These are the orders a drawing built from a realized arrangement
actually has, with the enclosing cycle running clockwise.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

from .arrangement import CombinatorialDescription, _require_simple
from .errors import BadAnchor, QuadrantConflict


@dataclass(frozen=True)
class Role:
    kind: str
    i: int = 0
    j: int = 0

    KINDS = ("CycleLeft", "CycleRight", "PathLeft", "PathRight", "Stub")

    def __str__(self) -> str:
        if self.kind in ("PathLeft", "PathRight"):
            return f"{self.kind}({self.i},{self.j})"
        return f"{self.kind}({self.i})"

    @classmethod
    def parse(cls, s: str) -> "Role":
        kind, _, rest = s.partition("(")
        if kind not in cls.KINDS or not rest.endswith(")"):
            raise ValueError(f"bad role {s!r}")
        nums = [int(x) for x in rest[:-1].split(",")]
        return cls(kind, *nums)

    @property
    def is_stub(self) -> bool:
        return self.kind == "Stub"

    @property
    def on_cycle(self) -> bool:
        return self.kind in ("CycleLeft", "CycleRight")

    @property
    def on_path(self) -> bool:
        return self.kind in ("PathLeft", "PathRight")


class Edge(NamedTuple):
    u: int
    v: int
    tag: str


def tag_kind(tag: str) -> str:
    return tag.partition("(")[0]


class QuadrantSlot(NamedTuple):
    """Slot ``index`` (1-based, counterclockwise) in sector ``sector`` of ``vertex``.

    Sector ``t`` is the angle from core dart ``t`` to core dart ``t + 1``
    in the core rotation of the vertex.
    """

    vertex: int
    sector: int
    index: int


class Join(NamedTuple):
    j: int
    a: QuadrantSlot
    b: QuadrantSlot


@dataclass(frozen=True)
class GadgetPlan:
    cycle_id: str
    cycle: tuple[int, ...]
    joins: tuple[Join, ...]

    @property
    def quadrants(self) -> set[tuple[int, int]]:
        out = set()
        for jn in self.joins:
            out.add((jn.a.vertex, jn.a.sector))
            out.add((jn.b.vertex, jn.b.sector))
        return out


@dataclass(frozen=True)
class RotGraph:
    roles: tuple[Role, ...]
    edges: tuple[Edge, ...]
    rotation: tuple[tuple[int, ...], ...]
    n: int = 0
    plans: tuple[GadgetPlan, ...] = field(default=(), compare=False)

    @property
    def num_vertices(self) -> int:
        return len(self.roles)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def other(self, e: int, v: int) -> int:
        u, w, _ = self.edges[e]
        if v == u:
            return w
        if v == w:
            return u
        raise ValueError(f"vertex {v} is not on edge {e}")

    def vertex(self, role: Role | str) -> int:
        if isinstance(role, str):
            role = Role.parse(role)
        return self._role_index()[role]

    def _role_index(self) -> dict[Role, int]:
        idx = self.__dict__.get("_ridx")
        if idx is None:
            idx = {r: k for k, r in enumerate(self.roles)}
            object.__setattr__(self, "_ridx", idx)
        return idx

    def edge_between(self, u: int, v: int, kinds: Sequence[str] | None = None) -> int:
        for e in self.rotation[u]:
            if self.other(e, u) == v and (kinds is None or tag_kind(self.edges[e].tag) in kinds):
                return e
        raise KeyError(f"no edge between {u} and {v}")

    def check(self) -> None:
        """Structural invariants of the rotation system."""
        seen = Counter()
        for v, rot in enumerate(self.rotation):
            if len(set(rot)) != len(rot):
                raise ValueError(f"vertex {v} lists an edge twice")
            for e in rot:
                if v not in self.edges[e][:2]:
                    raise ValueError(f"vertex {v} lists foreign edge {e}")
                seen[e] += 1
        for e, (u, v, _) in enumerate(self.edges):
            if u == v:
                raise ValueError(f"edge {e} is a loop")
            if seen[e] != 2:
                raise ValueError(f"edge {e} appears {seen[e]} times in the rotation")

    def with_rotation(self, v: int, rot: Sequence[int]) -> "RotGraph":
        rotation = list(self.rotation)
        rotation[v] = tuple(rot)
        return replace(self, rotation=tuple(rotation))

    def faces(self) -> list[list[tuple[int, int]]]:
        """Face boundaries as lists of darts ``(edge, tail)``."""
        pos = [{e: k for k, e in enumerate(rot)} for rot in self.rotation]
        unused = {(e, u) for e, (u, v, _) in enumerate(self.edges)} | \
                 {(e, v) for e, (u, v, _) in enumerate(self.edges)}
        out = []
        while unused:
            start = min(unused)
            face = []
            d = start
            while True:
                unused.discard(d)
                face.append(d)
                e, tail = d
                head = self.other(e, tail)
                rot = self.rotation[head]
                k = pos[head][e]
                e2 = rot[(k - 1) % len(rot)]
                d = (e2, head)
                if d == start:
                    break
                if len(face) > 2 * len(self.edges):
                    raise RuntimeError("face traversal did not close")
            out.append(face)
        return out


# -- core -----------------------------------------------------------------

def _cycle_left(i: int) -> Role:
    return Role("CycleLeft", i)


def _cycle_right(i: int) -> Role:
    return Role("CycleRight", i)


def _path_left(i: int, j: int) -> Role:
    return Role("PathLeft", i, j)


def _path_right(i: int, j: int) -> Role:
    return Role("PathRight", i, j)


def path_sequence(D: CombinatorialDescription, i: int) -> list[Role]:
    seq = [_cycle_left(i)]
    for j in D.crossings(i):
        seq += [_path_left(i, j), _path_right(i, j)]
    return seq + [_cycle_right(i)]


def gamma_sequence(n: int) -> list[Role]:
    return [_cycle_left(i) for i in range(1, n + 1)] + [_cycle_right(i) for i in range(1, n + 1)]


def cross_sequence(i: int, j: int) -> list[Role]:
    """The 4-cycle around the crossing of ``i < j``."""
    return [_path_left(i, j), _path_left(j, i), _path_right(i, j), _path_right(j, i)]


def build_core(D) -> RotGraph:
    D = _require_simple(D)
    n = D.n
    roles: list[Role] = gamma_sequence(n)
    for i in range(1, n + 1):
        roles += path_sequence(D, i)[1:-1]
    vid = {r: k for k, r in enumerate(roles)}
    edges: list[Edge] = []

    def add(a: Role, b: Role, tag: str) -> int:
        edges.append(Edge(vid[a], vid[b], tag))
        return len(edges) - 1

    gamma = gamma_sequence(n)
    g_next, g_prev = {}, {}
    for k, r in enumerate(gamma):
        e = add(r, gamma[(k + 1) % len(gamma)], "CycleGamma")
        g_next[r] = e
        g_prev[gamma[(k + 1) % len(gamma)]] = e
    e_i = {i: add(_cycle_left(i), _cycle_right(i), f"Ei({i})") for i in range(1, n + 1)}
    p_next, p_prev = {}, {}
    for i in range(1, n + 1):
        seq = path_sequence(D, i)
        for a, b in zip(seq, seq[1:]):
            e = add(a, b, f"Path({i})")
            p_next[a] = e
            p_prev[b] = e
    cross = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            seq = cross_sequence(i, j)
            for k, a in enumerate(seq):
                b = seq[(k + 1) % 4]
                e = add(a, b, f"CrossCycle({i},{j})")
                cross[(a, b)] = cross[(b, a)] = e

    rotation: list[tuple[int, ...]] = []
    for r in roles:
        if r.on_cycle:
            rotation.append((g_prev[r], p_next[r] if r.kind == "CycleLeft" else p_prev[r],
                             g_next[r], e_i[r.i]))
        else:
            i, k = r.i, r.j
            left = _path_left(k, i) if i < k else _path_right(k, i)
            right = _path_right(k, i) if i < k else _path_left(k, i)
            rotation.append((p_next[r], cross[(r, left)], p_prev[r], cross[(r, right)]))
    g = RotGraph(tuple(roles), tuple(edges), tuple(rotation), n)
    g.check()
    return g


# -- circle gadgets -------------------------------------------------------

def gadget_plan(core: RotGraph, cycle: Sequence[int], cycle_id: str,
                per_quadrant: int) -> GadgetPlan:
    """Joins of the circle gadget for ``cycle = (v_1, ..., v_k)``.

    The j-th half-edge of the first quadrant of ``v_1`` in clockwise
    order meets the j-th half-edge of the second quadrant of
    ``v_{k-j}`` in counterclockwise order, for j = 1..k-3.  Quadrant 1
    of ``v_i`` is the sector counterclockwise after the cycle edge to
    ``v_{i+1}``.
    """
    k = len(cycle)
    if k < 4:
        raise BadAnchor(f"cycle {cycle_id} has {k} < 4 vertices")
    if k - 3 > per_quadrant:
        raise BadAnchor(f"cycle {cycle_id} needs {k - 3} half-edges per quadrant")
    first = {}
    for m, v in enumerate(cycle):
        if core.degree(v) != 4:
            raise BadAnchor(f"vertex {v} of {cycle_id} has degree {core.degree(v)}")
        try:
            e_next = core.edge_between(v, cycle[(m + 1) % k])
            e_prev = core.edge_between(v, cycle[m - 1])
        except KeyError as exc:
            raise BadAnchor(f"{cycle_id} is not a cycle: {exc}") from None
        rot = core.rotation[v]
        t = rot.index(e_next)
        if rot[(t + 2) % 4] != e_prev:
            raise BadAnchor(f"cycle {cycle_id} does not pass straight through vertex {v}")
        first[v] = t
    v1 = cycle[0]
    joins = []
    for j in range(1, k - 2):
        w = cycle[k - j - 1]
        a = QuadrantSlot(v1, first[v1], per_quadrant + 1 - j)
        b = QuadrantSlot(w, (first[w] + 1) % 4, j)
        joins.append(Join(j, a, b))
    return GadgetPlan(cycle_id, tuple(cycle), tuple(joins))


def gadget_cycles(core: RotGraph, D: CombinatorialDescription) -> list[tuple[str, list[int]]]:
    """Anchored vertex sequences for every forced cycle."""
    n = D.n
    vx = core.vertex
    out = [("gamma", [vx(r) for r in gamma_sequence(n)])]
    for i in range(1, n + 1):
        out.append((f"C{i}", [vx(r) for r in reversed(path_sequence(D, i))]))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.append((f"C{i}-{j}", [vx(r) for r in cross_sequence(i, j)]))
    return out


def build_full(D) -> RotGraph:
    D = _require_simple(D)
    n = D.n
    core = build_core(D)
    per_q = 2 * n - 3
    plans = [gadget_plan(core, cyc, cid, per_q) for cid, cyc in gadget_cycles(core, D)]

    owner: dict[tuple[int, int], str] = {}
    slot_use: dict[QuadrantSlot, int] = {}
    edges = list(core.edges)
    for plan in plans:
        for q in plan.quadrants:
            if q in owner:
                raise QuadrantConflict(f"{plan.cycle_id} and {owner[q]} share quadrant {q}")
        for q in plan.quadrants:
            owner[q] = plan.cycle_id
        for jn in plan.joins:
            for s in (jn.a, jn.b):
                if s in slot_use or not 1 <= s.index <= per_q:
                    raise QuadrantConflict(f"slot {s} assigned twice or out of range")
            edges.append(Edge(jn.a.vertex, jn.b.vertex, f"Gadget({plan.cycle_id},{jn.j})"))
            slot_use[jn.a] = slot_use[jn.b] = len(edges) - 1

    roles = list(core.roles)
    rotation: list[tuple[int, ...]] = []
    stub_rot: list[tuple[int, ...]] = []
    for v in range(core.num_vertices):
        rot = []
        for t in range(4):
            rot.append(core.rotation[v][t])
            for s in range(1, per_q + 1):
                slot = QuadrantSlot(v, t, s)
                if slot not in slot_use:
                    roles.append(Role("Stub", len(roles) - core.num_vertices + 1))
                    edges.append(Edge(v, len(roles) - 1, "StubEdge"))
                    slot_use[slot] = len(edges) - 1
                    stub_rot.append((len(edges) - 1,))
                rot.append(slot_use[slot])
        rotation.append(tuple(rot))
    g = RotGraph(tuple(roles), tuple(edges), tuple(rotation + stub_rot), n, tuple(plans))
    g.check()
    return g


def expected_counts(n: int) -> dict[str, int]:
    """Closed-form sizes of the core and full graphs."""
    gadget = (n + 1) * (2 * n - 3) + n * (n - 1) // 2
    stubs = 8 * n * n * (2 * n - 3) - 2 * gadget
    return {
        "core_vertices": 2 * n * n,
        "core_edges": 4 * n * n,
        "full_degree": 8 * n - 8,
        "gadget_edges": gadget,
        "stubs": stubs,
        "full_vertices": 2 * n * n + stubs,
        "full_edges": 4 * n * n + gadget + stubs,
    }


def stats(G: RotGraph) -> dict:
    degrees = Counter(len(r) for r in G.rotation)
    tags = Counter(tag_kind(e.tag) for e in G.edges)
    return {
        "vertices": G.num_vertices,
        "edges": G.num_edges,
        "degrees": dict(sorted(degrees.items())),
        "tags": dict(sorted(tags.items())),
    }
