from __future__ import annotations


class CrossTypesError(Exception):
    """Base class for all package errors."""


class GraphFormatError(CrossTypesError, ValueError):
    pass


class PreconditionError(CrossTypesError, ValueError):
    pass


class BudgetExceeded(CrossTypesError, RuntimeError):
    """Search budget ran out before a decision was reached.  Never a NO."""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class UnsupportedTypeSet(CrossTypesError, ValueError):
    pass


class TooLarge(CrossTypesError, ValueError):
    pass


class MalformedDrawing(CrossTypesError, ValueError):
    pass


class InvalidInstance(CrossTypesError, ValueError):
    pass


class MetadataMissing(CrossTypesError, ValueError):
    pass
