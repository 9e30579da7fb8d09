"""Shared exception types."""


class ComputationError(Exception):
    """A requested computation cannot be completed reliably."""


class CapacityError(ComputationError):
    """Problem size exceeds the exact-expansion capacity bound."""


class PoleError(ComputationError):
    """Evaluation point sits on (or too close to) a pole."""


class NonConvergenceError(ComputationError):
    """An iterative procedure failed to converge within its budget."""


class BoundaryZeroSuspected(ComputationError):
    """A contour integral walked too close to a zero of the integrand."""
