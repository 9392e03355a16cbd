"""Exception hierarchy shared by all modules."""


class StrongGeometryError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(StrongGeometryError, ValueError):
    pass


class ZeroWitness(StrongGeometryError, ValueError):
    pass


class TooFewPoints(StrongGeometryError, ValueError):
    pass


class UnknownLabel(StrongGeometryError, KeyError):
    pass


class DegenerateSupport(StrongGeometryError, ValueError):
    pass


class MissingWedgeEntry(StrongGeometryError, ValueError):
    pass


class SearchTooLarge(StrongGeometryError, ValueError):
    pass


class DegenerateConfiguration(StrongGeometryError, ValueError):
    """Raised when points are not in general position.

    ``tuple`` holds the offending labels.
    """

    def __init__(self, message: str, tuple_=None):
        super().__init__(message)
        self.tuple = tuple_


class NonGeneric(StrongGeometryError, ValueError):
    pass


class NonGenericShadow(NonGeneric):
    pass


class ConsecutiveArcs(StrongGeometryError, ValueError):
    pass


class ProjectionCenterArc(StrongGeometryError, ValueError):
    pass


class NoCrossing(StrongGeometryError, ValueError):
    pass


class GaussSyntaxError(StrongGeometryError, ValueError):
    def __init__(self, line: int, column: int, expectation: str):
        super().__init__(f"line {line}, column {column}: expected {expectation}")
        self.line = line
        self.column = column
        self.expectation = expectation


class ValidationError(StrongGeometryError, ValueError):
    def __init__(self, ident, reason: str):
        super().__init__(f"{ident}: {reason}")
        self.ident = ident
        self.reason = reason


class KindMismatch(StrongGeometryError, ValueError):
    pass


class MalformedDiagram(StrongGeometryError, ValueError):
    pass


class PointFileError(StrongGeometryError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
