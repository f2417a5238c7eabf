"""Two crossing lines, start to finish.

Describe the arrangement, compile the gadget graph, draw it through the
Poincare disk, check the drawing and read the arrangement back.
"""

from __future__ import annotations

from lombardi import EuclideanLine, build_core, build_full, describe, extract_description, validate
from lombardi.drawing import full_construction

lines = [EuclideanLine(1.0, 0.0), EuclideanLine(-1.0, 1.0)]
D = describe(lines)
print("description:", D.to_lists())

core, full = build_core(D), build_full(D)
print(f"core graph: {core.num_vertices} vertices, {core.num_edges} edges")
print(f"full graph: {full.num_vertices} vertices, {full.num_edges} edges")

c = full_construction(lines, D)
rep = validate(c.graph, c.drawing)
print("validation passed:", rep.passed)
for name, check in rep.to_dict()["checks"].items():
    # separations are minimum distances, the rest are worst errors
    print(f"  {name:20s} {'ok' if check['passed'] else 'FAIL'}  {check['residual']:.2e}")

print("extracted:", extract_description(c.graph, c.drawing).to_lists())
