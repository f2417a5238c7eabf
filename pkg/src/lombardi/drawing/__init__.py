"""Lombardi drawings: construction, validation, extraction and arc-triangle probes."""

from .construct import (
    Construction,
    construct_full,
    construct_restricted,
    construct_with_retry,
    full_construction,
    restricted_construction,
)
from .extract import extract_description, fit_circle
from .model import AngleAssignment, LombardiDrawing, apply_inversion
from .triangles import (
    ArcTriangle,
    TriangleAngles,
    arc_triangle_angles,
    check_circle_forcing,
    check_midpoint_on_circle,
)
from .validate import bad_edge_pairs, validate

__all__ = [
    "AngleAssignment",
    "ArcTriangle",
    "Construction",
    "LombardiDrawing",
    "TriangleAngles",
    "apply_inversion",
    "arc_triangle_angles",
    "bad_edge_pairs",
    "check_circle_forcing",
    "check_midpoint_on_circle",
    "construct_full",
    "construct_restricted",
    "construct_with_retry",
    "extract_description",
    "fit_circle",
    "full_construction",
    "restricted_construction",
    "validate",
]
