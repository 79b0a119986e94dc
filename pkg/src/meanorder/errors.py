"""Exception types shared across the package."""


class MeanError(Exception):
    """Base class for all errors raised by meanorder."""


class ParseError(MeanError, ValueError):
    """Malformed mean expression.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} (at position {position})")


class DomainError(MeanError, ValueError):
    """Input outside the domain where a mean can be evaluated."""


class NonConvergence(MeanError, ArithmeticError):
    """Gauss iteration hit ``max_iter`` before the gap fell under ``tol``."""

    def __init__(self, message, last_pair=None, gap=float("nan"), iterations=0):
        self.last_pair = last_pair
        self.gap = gap
        self.iterations = iterations
        super().__init__(message)
