"""A drawing survives circle inversion; a nudged vertex does not.

Inversion maps circles to circles and keeps angles, so an inverted
Lombardi drawing is still one and still encodes the same arrangement.
Moving a single vertex breaks the angular and tangency conditions.
"""

from __future__ import annotations

from lombardi import Circle, LombardiDrawing, Point, apply_inversion, describe, extract_description, random_lines, validate
from lombardi.drawing import construct_with_retry

lines = random_lines(3, 4)
D = describe(lines)
c, _ = construct_with_retry(lines, D)
G, d = c.graph, c.drawing
print(f"n = 3, {G.num_vertices} vertices, valid: {validate(G, d).passed}")

xs = [p.x for p in d.positions]
ys = [p.y for p in d.positions]
# a center well off to the side keeps small features resolvable
center = Point(max(xs) + 0.5 * (max(xs) - min(xs)), sum(ys) / len(ys))
inv = apply_inversion(d, Circle(center, 0.7 * d.diameter))
print("inverted drawing valid:", validate(G, inv).passed)
print("inverted drawing encodes D:", extract_description(G, inv) == D)

pos = list(d.positions)
p = pos[0]
pos[0] = Point(p.x + 1e-3 * d.diameter, p.y)
moved = LombardiDrawing(pos, d.arcs)
rep = validate(G, moved)
print("after moving vertex 0 by 1e-3 of the diameter, valid:", rep.passed)
print("failed checks:", ", ".join(rep.failures))
