"""SVG 1.1 rendering of drawings."""

from __future__ import annotations

import math
from pathlib import Path

from .drawing.model import LombardiDrawing

_HEADER = ('<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
           "<!-- y axis flipped: mathematical counterclockwise appears counterclockwise on screen -->\n")


def _f(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(drawing: LombardiDrawing, scale: float = 100.0, out=None,
               margin: float = 10.0, dot: float = 2.0, stroke: float = 1.0) -> str:
    """One ``<path>`` per edge and one ``<circle>`` per vertex; returns the text."""
    if not scale > 0:
        raise ValueError("scale must be positive")
    pts = drawing.positions
    if pts:
        xmin = min(p.x for p in pts)
        ymax = max(p.y for p in pts)
        w = (max(p.x for p in pts) - xmin) * scale + 2 * margin
        h = (ymax - min(p.y for p in pts)) * scale + 2 * margin
    else:
        xmin = ymax = 0.0
        w = h = 2 * margin

    def X(p) -> str:
        return _f((p[0] - xmin) * scale + margin)

    def Y(p) -> str:
        return _f((ymax - p[1]) * scale + margin)

    parts = [_HEADER,
             f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(w)}" height="{_f(h)}" '
             f'viewBox="0 0 {_f(w)} {_f(h)}">\n',
             f'<g fill="none" stroke="black" stroke-width="{_f(stroke)}">\n']
    for a in drawing.arcs:
        if a.is_segment:
            d = f"M {X(a.p)} {Y(a.p)} L {X(a.q)} {Y(a.q)}"
        else:
            r = _f(a.support.radius * scale)
            large = 1 if a.sweep > math.pi else 0
            # the flip turns counterclockwise into SVG's negative-angle direction
            sweep = 0 if a.ccw else 1
            d = f"M {X(a.p)} {Y(a.p)} A {r} {r} 0 {large} {sweep} {X(a.q)} {Y(a.q)}"
        parts.append(f'<path d="{d}"/>\n')
    parts.append("</g>\n<g fill=\"black\">\n")
    for p in pts:
        parts.append(f'<circle cx="{X(p)}" cy="{Y(p)}" r="{_f(dot)}"/>\n')
    parts.append("</g>\n</svg>\n")
    text = "".join(parts)
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    return text
