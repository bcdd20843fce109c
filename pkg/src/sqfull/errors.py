"""Exception hierarchy shared by every module.

The CLI maps these onto process exit codes, so the distinction between a
domain error (bad mathematical input) and a capacity error (input legal but
over the configured budget) is part of the public contract.
"""


class SqfullError(Exception):
    """Base class for all library errors."""


class DomainError(SqfullError):
    """Input is outside the mathematical domain of the operation."""


class CapacityError(SqfullError):
    """Input is legal but exceeds a configured size/time budget."""


class ConvergenceError(SqfullError):
    """An iterative numerical procedure failed its stated refinement check."""


class EstimationError(SqfullError):
    """A statistical estimator received degenerate data."""
