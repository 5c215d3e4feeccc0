"""Exception hierarchy shared by every module."""


class HyperCauchyError(Exception):
    """Base class for all package errors."""


class DomainError(HyperCauchyError, ValueError):
    """An argument lies outside the domain of the function."""


class RangeError(HyperCauchyError, OverflowError):
    """Evaluation would leave the safe floating-point range."""


class ConsistencyError(HyperCauchyError, ArithmeticError):
    """Two quantities that must agree to rounding do not."""


class TruncationError(HyperCauchyError, ArithmeticError):
    """A series failed to meet its tolerance within the term cap.

    The partial sum reached is kept on ``partial_sum``.
    """

    def __init__(self, message, partial_sum=float("nan"), terms=0):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.terms = terms


class BracketError(HyperCauchyError, ValueError):
    """A bracket does not contain what the caller promised it does."""


class NumericError(HyperCauchyError, ArithmeticError):
    """An iterative method failed to converge."""
