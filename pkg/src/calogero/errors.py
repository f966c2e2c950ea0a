"""Shared exception types."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """An iterative scheme (series, quadrature, root search, ODE step) failed
    to reach its tolerance within its budget."""
