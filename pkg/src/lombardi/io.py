"""JSON files for arrangements, lines, graphs and drawings.

Floats are written with 17 significant digits, which reads back to the
identical double, and keys are emitted in a fixed order, so equal data
always gives byte-identical files.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .arrangement import CombinatorialDescription, EuclideanLine, as_description
from .drawing.model import AngleAssignment, LombardiDrawing
from .geom import Arc, Circle, Point
from .reduction import Edge, Role, RotGraph


class SchemaError(ValueError):
    """A file does not match the expected layout."""


def _num(x: float) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if not math.isfinite(x):
        raise SchemaError(f"cannot write non-finite number {x}")
    s = f"{x:.17g}"
    # keep floats recognisable as floats
    if all(ch not in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj: Any, indent: int = 0) -> str:
    """Deterministic JSON text; dict keys keep insertion order."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, (bool, int, float)):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (bool, int, float)) for v in obj):
            return "[" + ", ".join(_num(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in obj) + "\n" + end + "]"
    raise SchemaError(f"cannot write {type(obj).__name__}")


def _write(path, obj) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")


def _read(path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc}") from None


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise SchemaError(msg)


# -- arrangement and lines ------------------------------------------------

def arrangement_to_json(D) -> dict:
    D = as_description(D)
    return {"n": D.n, "lists": [list(r) for r in D.lists]}


def arrangement_from_json(obj) -> CombinatorialDescription:
    _require(isinstance(obj, dict) and "n" in obj and "lists" in obj, "arrangement needs 'n' and 'lists'")
    lists = obj["lists"]
    _require(isinstance(lists, list) and all(isinstance(r, list) for r in lists), "'lists' must be a list of lists")
    _require(all(isinstance(j, int) and not isinstance(j, bool) for r in lists for j in r),
             "list entries must be integers")
    _require(obj["n"] == len(lists), "'n' does not match the number of lists")
    return CombinatorialDescription(tuple(tuple(r) for r in lists))


def lines_to_json(lines) -> list:
    return [{"a": ln.a, "b": ln.b} for ln in lines]


def lines_from_json(obj) -> list[EuclideanLine]:
    _require(isinstance(obj, list), "lines file must hold a list")
    out = []
    for k, row in enumerate(obj):
        _require(isinstance(row, dict) and "a" in row and "b" in row, f"line {k} needs 'a' and 'b'")
        _require(all(isinstance(row[c], (int, float)) and not isinstance(row[c], bool) for c in "ab"),
                 f"line {k} coefficients must be numbers")
        out.append(EuclideanLine(row["a"], row["b"]))
    return out


# -- graph ----------------------------------------------------------------

def graph_to_json(G: RotGraph) -> dict:
    return {
        "vertices": [{"id": v, "role": str(r)} for v, r in enumerate(G.roles)],
        "edges": [{"id": e, "u": ed.u, "v": ed.v, "tag": ed.tag} for e, ed in enumerate(G.edges)],
        "rotation": {str(v): list(rot) for v, rot in enumerate(G.rotation)},
    }


def graph_from_json(obj) -> RotGraph:
    """Read a graph file; gadget plans are derived data and are not restored."""
    _require(isinstance(obj, dict) and {"vertices", "edges", "rotation"} <= set(obj),
             "graph needs 'vertices', 'edges' and 'rotation'")
    verts = sorted(obj["vertices"], key=lambda d: d["id"])
    _require([d["id"] for d in verts] == list(range(len(verts))), "vertex ids must be 0..V-1")
    try:
        roles = tuple(Role.parse(d["role"]) for d in verts)
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"bad vertex role: {exc}") from None
    edges = sorted(obj["edges"], key=lambda d: d["id"])
    _require([d["id"] for d in edges] == list(range(len(edges))), "edge ids must be 0..E-1")
    E = tuple(Edge(int(d["u"]), int(d["v"]), str(d["tag"])) for d in edges)
    rot = obj["rotation"]
    _require(set(rot) == {str(v) for v in range(len(roles))}, "rotation must list every vertex")
    rotation = tuple(tuple(int(e) for e in rot[str(v)]) for v in range(len(roles)))
    n = sum(1 for r in roles if r.kind == "CycleLeft")
    G = RotGraph(roles, E, rotation, n)
    try:
        G.check()
    except ValueError as exc:
        raise SchemaError(f"inconsistent graph: {exc}") from None
    return G


# -- drawing --------------------------------------------------------------

def drawing_to_json(drawing: LombardiDrawing) -> dict:
    edges = {}
    for e, a in enumerate(drawing.arcs):
        if a.is_segment:
            edges[str(e)] = {"type": "segment"}
        else:
            c = a.support
            edges[str(e)] = {"type": "arc", "cx": c.center.x, "cy": c.center.y, "r": c.radius,
                             "a0": c.angle_of(a.p), "a1": c.angle_of(a.q), "ccw": bool(a.ccw)}
    return {"vertices": {str(v): [p.x, p.y] for v, p in enumerate(drawing.positions)}, "edges": edges}


def drawing_from_json(obj, G: RotGraph) -> LombardiDrawing:
    """Arcs end exactly at their vertices' placements; ``a0``/``a1`` are informative."""
    _require(isinstance(obj, dict) and {"vertices", "edges"} <= set(obj), "drawing needs 'vertices' and 'edges'")
    V, E = obj["vertices"], obj["edges"]
    _require(set(V) == {str(v) for v in range(G.num_vertices)}, "drawing vertices do not match the graph")
    _require(set(E) == {str(e) for e in range(G.num_edges)}, "drawing edges do not match the graph")
    pos = []
    for v in range(G.num_vertices):
        xy = V[str(v)]
        _require(isinstance(xy, list) and len(xy) == 2, f"vertex {v} needs [x, y]")
        pos.append(Point(float(xy[0]), float(xy[1])))
    arcs = []
    for e, ed in enumerate(G.edges):
        d = E[str(e)]
        p, q = pos[ed.u], pos[ed.v]
        if d.get("type") == "segment":
            arcs.append(Arc.segment(p, q))
        elif d.get("type") == "arc":
            try:
                c = Circle(Point(float(d["cx"]), float(d["cy"])), float(d["r"]))
            except (KeyError, ValueError) as exc:
                raise SchemaError(f"edge {e}: {exc}") from None
            arcs.append(Arc(c, p, q, bool(d.get("ccw", True))))
        else:
            raise SchemaError(f"edge {e}: unknown type {d.get('type')!r}")
    return LombardiDrawing(tuple(pos), tuple(arcs))


def theta_from_json(obj, G: RotGraph) -> AngleAssignment:
    """``{"<vid>": [angles]}``; vertices left out get equal angles."""
    _require(isinstance(obj, dict), "angle assignment must be an object")
    rows = {}
    for k, row in obj.items():
        _require(k.isdigit() and int(k) < G.num_vertices, f"unknown vertex {k!r}")
        rows[int(k)] = [float(x) for x in row]
    return AngleAssignment.from_mapping(G, rows)


# -- file helpers ---------------------------------------------------------

def write_arrangement(path, D) -> None:
    _write(path, arrangement_to_json(D))


def read_arrangement(path) -> CombinatorialDescription:
    return arrangement_from_json(_read(path))


def write_lines(path, lines) -> None:
    _write(path, lines_to_json(lines))


def read_lines(path) -> list[EuclideanLine]:
    return lines_from_json(_read(path))


def write_graph(path, G: RotGraph) -> None:
    _write(path, graph_to_json(G))


def read_graph(path) -> RotGraph:
    return graph_from_json(_read(path))


def write_drawing(path, drawing: LombardiDrawing) -> None:
    _write(path, drawing_to_json(drawing))


def read_drawing(path, G: RotGraph) -> LombardiDrawing:
    return drawing_from_json(_read(path), G)


def read_theta(path, G: RotGraph) -> AngleAssignment:
    return theta_from_json(_read(path), G)


def write_json(path, obj) -> None:
    _write(path, obj)
