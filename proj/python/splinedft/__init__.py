"""Arbitrary-degree splines with optimised boundary conditions."""

from ._splinedft import (
    BadOrder,
    CubicSpline,
    DomainError,
    Error,
    EvenNNotSupported,
    OutOfDomain,
    ParityViolation,
    SingularMatrix,
    SingularSystem,
    Spline,
    benchmark,
    cubic,
    eulerian_row,
    interpolate,
    paper_cell,
    required_digits,
)

__all__ = [
    "BadOrder",
    "CubicSpline",
    "DomainError",
    "Error",
    "EvenNNotSupported",
    "OutOfDomain",
    "ParityViolation",
    "SingularMatrix",
    "SingularSystem",
    "Spline",
    "benchmark",
    "cubic",
    "eulerian_row",
    "interpolate",
    "paper_cell",
    "required_digits",
]
