"""Exception types shared across the package."""


class HeisWulffError(Exception):
    """Base class for package errors."""


class DomainError(HeisWulffError, ValueError):
    """Invalid argument (bad parameter, zero direction, non-positive scale)."""


class ChartError(HeisWulffError, ValueError):
    """Evaluation requested where a chart is singular (e.g. at the poles)."""


class DataError(HeisWulffError, ValueError):
    """Malformed or non-finite input data."""


class NumericalError(HeisWulffError, ArithmeticError):
    """An iterative solver failed or a linear system became singular."""


class SingularSystemError(NumericalError):
    """The curvature ODE matrix lost rank (body is not strictly convex there)."""
