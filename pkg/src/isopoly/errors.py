"""Exception hierarchy.

Everything raised for bad polygon input derives from :class:`PolygonError`
so the CLI can map it to a single exit status.
"""


class IsopolyError(Exception):
    pass


class PolygonError(IsopolyError, ValueError):
    """Input does not describe a valid polygon."""


class TooFewSides(PolygonError):
    pass


class NonPositiveSide(PolygonError):
    pass


class PolygonInequalityViolated(PolygonError):
    pass


class BadCount(PolygonError):
    pass


class DegenerateVertices(PolygonError):
    pass


class NonPositiveArea(PolygonError):
    pass


class AmbiguousMax(PolygonError):
    pass


class CenterNotInside(IsopolyError, ValueError):
    """Inradius about the circumcenter is only meaningful when it lies inside."""


class NoConvergence(IsopolyError, RuntimeError):
    pass


class ParameterOutOfRange(IsopolyError, ValueError):
    pass


class EpsilonTooLarge(ParameterOutOfRange):
    pass


class AlphaOutOfRange(ParameterOutOfRange):
    pass


class ThetaOutOfRange(ParameterOutOfRange):
    pass


class ChordDominates(PolygonError):
    pass
