"""Exception hierarchy shared by every module."""


class HulthenError(Exception):
    """Base class for all library errors."""


class ParameterDomainError(HulthenError, ValueError):
    """A parameter lies outside the domain where an operation is defined."""


class NoBoundStateError(ParameterDomainError):
    """Requested level is not normalizable for the given coupling."""


class LowestWeightError(ParameterDomainError):
    """The lowering operator was applied to the bottom of the family."""


class CapacityError(HulthenError):
    """Input exceeds a configured size limit, or required data is missing."""


class NumericalFailure(HulthenError, ArithmeticError):
    """An iterative numerical routine did not converge.

    ``estimate`` carries the best achieved error estimate when known.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class BracketError(NumericalFailure):
    """An eigenvalue bracket does not enclose the requested level."""
