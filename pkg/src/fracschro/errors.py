"""Exception hierarchy shared by every module."""


class FracSchroError(Exception):
    """Base class for library errors."""


class DomainError(FracSchroError, ValueError):
    """An input violates an admissibility constraint."""


class PoleError(DomainError):
    """A Gamma function was evaluated at one of its poles."""


class ConvergenceError(FracSchroError, ArithmeticError):
    """A quadrature or series did not reach its tolerance.

    ``estimate`` carries the last value and ``error`` its accuracy estimate,
    when one is available.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class BranchError(FracSchroError):
    """A multivalued power left the sheet it was validated on."""
