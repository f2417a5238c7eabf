"""Exception types raised across the package."""

from __future__ import annotations


class LombardiError(Exception):
    """Base class for all package errors."""


# geometry kernel
class CoincidentCircles(LombardiError, ValueError):
    pass


class NotAnEndpoint(LombardiError, ValueError):
    pass


class NoProperIntersection(LombardiError, ValueError):
    pass


class TouchingArcs(LombardiError, ValueError):
    pass


class CoincidentEndpoints(LombardiError, ValueError):
    pass


class CollinearPoints(LombardiError, ValueError):
    pass


class DegenerateConfiguration(LombardiError, ValueError):
    """A construction hit a tangency or coincidence; perturb the input and retry."""


# hyperbolic models
class DiameterChord(LombardiError, ValueError):
    pass


class InvalidPoincareLine(LombardiError, ValueError):
    pass


# arrangements
class ParallelLines(LombardiError, ValueError):
    pass


class ConcurrentTriple(LombardiError, ValueError):
    pass


class InvalidDescription(LombardiError, ValueError):
    pass


# reduction
class BadAnchor(LombardiError, ValueError):
    pass


class QuadrantConflict(LombardiError, RuntimeError):
    """Two circle gadgets claimed the same quadrant. Indicates a bug."""


# drawings
class DescriptionMismatch(LombardiError, ValueError):
    pass


class SlotTangentMismatch(LombardiError, RuntimeError):
    pass


class CoverageMismatch(LombardiError, ValueError):
    pass


class CircleFitFailure(LombardiError, ValueError):
    pass


class NonOrthogonalSupport(LombardiError, ValueError):
    pass


class NotSimple(LombardiError, ValueError):
    pass


class PreconditionViolated(LombardiError, ValueError):
    pass


class VertexAtCenter(LombardiError, ValueError):
    pass


class SegmentEdge(LombardiError, ValueError):
    pass
