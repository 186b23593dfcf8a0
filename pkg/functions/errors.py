"""
Exceptions raised by the kernels.
The verification service turns GuardRejection into a skipped report.
"""


class IsekiError(Exception):
    """Base class for every error raised by the kernels"""


class DomainError(IsekiError, ValueError):
    """An input violates an operation's precondition"""


class ConvergenceError(IsekiError, ArithmeticError):
    """A series could not be truncated within the configured term budget"""

    def __init__(self, message: str, terms: int = 0):
        super().__init__(message)
        self.terms = terms


class GuardRejection(DomainError):
    """Inputs sit too close to a numerical boundary to give a meaningful result"""
