"""Exception hierarchy shared by all stages."""

from __future__ import annotations


class VisrepError(Exception):
    """Base class for every error raised by the engine."""


class ValidationError(VisrepError):
    """Input does not satisfy a documented precondition."""


class NotSimple(ValidationError):
    pass


class EulerViolation(ValidationError):
    pass


class DuplicateCrossing(ValidationError):
    pass


class NotTwoConnected(ValidationError):
    pass


class NotThreeConnected(ValidationError):
    pass


class DensityViolation(ValidationError):
    pass


class EdgeNotOnOuterFace(ValidationError):
    pass


class BadFaceSize(ValidationError):
    pass


class NotICPlanar(ValidationError):
    pass


class WConfigurationPresent(ValidationError):
    pass


class InfeasibleParams(ValidationError):
    pass


class UnclassifiableFace(VisrepError):
    """A face could not be classified; signals a broken ordering."""


class OrderingDeadEnd(VisrepError):
    """The canonical ordering ran out of feasible candidates."""


class DrawingError(VisrepError):
    """A drawer could not complete its construction."""


class ShapeOutOfMode(VisrepError):
    pass


class CompactionBrokeVisibility(VisrepError):
    pass
