"""Exception hierarchy shared by every graph_entropy module."""

from typing import Any


class GraphEntropyError(Exception):
    """Base class for all package errors."""


class GraphValidationError(GraphEntropyError, ValueError):
    """The input graph (or a parameter describing it) is not acceptable."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class DocumentError(GraphValidationError):
    """A graph or cover document could not be parsed."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        location = []
        if field:
            location.append(f"field '{field}'")
        if line is not None:
            location.append(f"line {line}")
        suffix = f" ({', '.join(location)})" if location else ""
        super().__init__(f"{message}{suffix}")
        self.field = field
        self.line = line


class HypothesisError(GraphValidationError):
    """The graph violates the standing hypotheses of the entropy operations."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message, witness=report)
        self.report = report


class ReducibleMatrixError(GraphValidationError):
    """The non-backtracking matrix is reducible; witness holds its SCCs."""


class IrrationalLengthError(GraphValidationError):
    """The exact oracle only handles rational lengths with a usable grid."""


class GridTooLargeError(GraphValidationError):
    """The oracle grid would exceed the configured cell cap."""


class NumericalError(GraphEntropyError, ArithmeticError):
    """A numerical routine failed to deliver a trustworthy value."""


class ConvergenceError(NumericalError):
    def __init__(self, message: str, iterations: int, residual: float):
        super().__init__(f"{message} (iterations={iterations}, residual={residual:.3e})")
        self.iterations = iterations
        self.residual = residual


class BracketError(NumericalError):
    """The root finder could not bracket lambda(h) = 1."""


class DegenerateFitError(NumericalError):
    """Too few usable radii for the growth-rate regression."""


class InternalConsistencyError(NumericalError):
    """Two independent computations disagree; signals a bug, not bad input."""
