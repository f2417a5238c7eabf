"""Command-line pipeline: lines -> arrangement -> graph -> drawing -> report / SVG.

Exit codes: 0 success, 1 failed validation or round trip, 2 unreadable
input, 3 degenerate geometry after all retries.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .arrangement import describe, random_lines, realize_search
from .drawing import (
    construct_with_retry,
    extract_description,
    validate,
)
from .errors import DegenerateConfiguration, InvalidDescription, LombardiError
from .geom import Tolerance
from .reduction import build_core, build_full
from .svg import render_svg

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DEGENERATE = 0, 1, 2, 3


def _tol(args) -> Tolerance:
    return Tolerance(eps_len=args.tol_len, eps_ang=args.tol_angle)


def _emit(args, obj) -> None:
    text = io.dumps(obj) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _graph(D, full: bool):
    return build_full(D) if full else build_core(D)


def cmd_sample(args) -> int:
    io.write_lines(args.out, random_lines(args.n, args.seed))
    return EXIT_OK


def cmd_describe(args) -> int:
    io.write_arrangement(args.out, describe(io.read_lines(args.lines), _tol(args)))
    return EXIT_OK


def cmd_realize(args) -> int:
    lines = realize_search(io.read_arrangement(args.arrangement), budget=args.budget, seed=args.seed)
    if lines is None:
        print("no realization found within the budget", file=sys.stderr)
        return EXIT_FAIL
    io.write_lines(args.out, lines)
    return EXIT_OK


def cmd_reduce(args) -> int:
    io.write_graph(args.out, _graph(io.read_arrangement(args.input), args.full))
    return EXIT_OK


def cmd_draw(args) -> int:
    lines = io.read_lines(args.lines)
    D = io.read_arrangement(args.arrangement) if args.arrangement else describe(lines, _tol(args))
    c, used = construct_with_retry(lines, D, full=args.full, seed=args.seed,
                                   attempts=args.retries, tol=_tol(args))
    if used is not lines:
        print("input was degenerate; drew a perturbed copy of the lines", file=sys.stderr)
    io.write_drawing(args.out, c.drawing)
    return EXIT_OK


def cmd_validate(args) -> int:
    G = io.read_graph(args.graph)
    drawing = io.read_drawing(args.drawing, G)
    theta = io.read_theta(args.theta, G) if args.theta else None
    rep = validate(G, drawing, theta, _tol(args), strict_orientation=args.strict_orientation,
                   strict_pairs=args.strict_pairs)
    _emit(args, rep.to_dict())
    if not rep.passed:
        print("failed: " + ", ".join(rep.failures), file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_extract(args) -> int:
    G = io.read_graph(args.graph)
    drawing = io.read_drawing(args.drawing, G)
    io.write_arrangement(args.out, extract_description(G, drawing, _tol(args)))
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    tol = _tol(args)
    lines = io.read_lines(args.lines)
    D = describe(lines, tol)
    c, _ = construct_with_retry(lines, D, full=not args.core, seed=args.seed,
                                attempts=args.retries, tol=tol)
    rep = validate(c.graph, c.drawing, tol=tol)
    got = extract_description(c.graph, c.drawing, tol)
    ok = rep.passed and got == D
    _emit(args, {"description": D.to_lists(), "extracted": got.to_lists(),
                 "validation": rep.to_dict(), "match": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render(args) -> int:
    G = io.read_graph(args.graph)
    render_svg(io.read_drawing(args.drawing, G), args.scale, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-angle", type=float, default=1e-9, help="angle tolerance in radians")
    common.add_argument("--tol-len", type=float, default=1e-9, help="length tolerance, relative to the scene")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="lombardi", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", parents=[common], help="write random lines")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("describe", parents=[common], help="lines -> arrangement")
    s.add_argument("--lines", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_describe)

    s = sub.add_parser("realize", parents=[common], help="arrangement -> lines (heuristic)")
    s.add_argument("--arrangement", required=True)
    s.add_argument("--budget", type=int, default=100_000)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("reduce", parents=[common], help="arrangement -> graph")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--full", action="store_true", help="add circle gadgets and stubs")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("draw", parents=[common], help="lines (+ arrangement) -> drawing")
    s.add_argument("--lines", required=True)
    s.add_argument("--arrangement")
    s.add_argument("--out", required=True)
    s.add_argument("--full", action="store_true")
    s.add_argument("--retries", type=int, default=3)
    s.set_defaults(func=cmd_draw)

    s = sub.add_parser("validate", parents=[common], help="graph + drawing -> report")
    s.add_argument("--graph", required=True)
    s.add_argument("--drawing", required=True)
    s.add_argument("--theta", help="angle assignment file")
    s.add_argument("--strict-orientation", action="store_true")
    s.add_argument("--strict-pairs", action="store_true", help="reject edges with two common points")
    s.add_argument("--out")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("extract", parents=[common], help="graph + drawing -> arrangement")
    s.add_argument("--graph", required=True)
    s.add_argument("--drawing", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("roundtrip", parents=[common], help="lines -> ... -> arrangement")
    s.add_argument("--lines", required=True)
    s.add_argument("--core", action="store_true", help="use the gadget-free graph")
    s.add_argument("--retries", type=int, default=3)
    s.add_argument("--out")
    s.set_defaults(func=cmd_roundtrip)

    s = sub.add_parser("render", parents=[common], help="graph + drawing -> SVG")
    s.add_argument("--graph", required=True)
    s.add_argument("--drawing", required=True)
    s.add_argument("--scale", type=float, default=100.0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DegenerateConfiguration as exc:
        print(f"degenerate configuration: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (io.SchemaError, InvalidDescription, json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LombardiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
