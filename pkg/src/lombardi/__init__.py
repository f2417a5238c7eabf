"""Lombardi drawings of pseudoline-arrangement gadget graphs.

Compile arrangement descriptions into graphs with rotation systems,
draw them from realized line arrangements through the Poincare disk,
validate candidate drawings and read arrangements back out.
"""

from .arrangement import (
    GAMMA,
    CombinatorialDescription,
    EuclideanLine,
    describe,
    extend_gamma,
    random_lines,
    realize_search,
    validate_simple,
)
from .drawing import (
    AngleAssignment,
    ArcTriangle,
    LombardiDrawing,
    apply_inversion,
    arc_triangle_angles,
    check_circle_forcing,
    check_midpoint_on_circle,
    construct_full,
    construct_restricted,
    extract_description,
    validate,
)
from .geom import INF, Arc, Circle, Line, Point, Tolerance
from .hyperbolic import DiskModel, KleinChord, PoincareLine
from .reduction import Role, RotGraph, build_core, build_full
from .report import ValidationReport

__version__ = "0.1.0"
