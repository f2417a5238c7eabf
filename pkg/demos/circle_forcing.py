"""Circle gadgets pin their cycles to a circle.

Every cycle that carries a gadget (the enclosing cycle, each path with
its closing edge, each crossing 4-cycle) must lie on one circle in a
valid drawing.  The probe confirms this on a constructed drawing and
rejects a drawing with one cycle vertex moved off its circle.
"""

from __future__ import annotations

from lombardi import LombardiDrawing, Point, check_circle_forcing, describe, random_lines
from lombardi.drawing import construct_with_retry

lines = random_lines(3, 1)
c, _ = construct_with_retry(lines, describe(lines))
G, d = c.graph, c.drawing

for plan in G.plans:
    print(f"{plan.cycle_id:6s} {len(plan.cycle)} vertices on one circle: "
          f"{check_circle_forcing(G, d, plan.cycle)}")

plan = G.plans[0]
v = plan.cycle[1]
pos = list(d.positions)
pos[v] = Point(pos[v].x * 1.01, pos[v].y * 1.01)
print(f"{plan.cycle_id} with vertex {v} moved by 1%:",
      check_circle_forcing(G, LombardiDrawing(pos, d.arcs), plan.cycle))
