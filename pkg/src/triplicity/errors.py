"""Exception types shared across the package."""


class DomainError(ValueError):
    """Parameters outside the declared domain of an operation."""


class PoleError(ZeroDivisionError):
    """A denominator (series factor or convergent) vanished."""


class ZeroFactorError(ArithmeticError):
    """A product factor is exactly zero (root-of-unity base)."""


class DegenerateError(ArithmeticError):
    """A determinant in a ladder vanished where a nonzero one was required."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class ExhaustedError(IndexError):
    """A finite coefficient source ran out before the requested depth."""


class ClassificationError(ValueError):
    """A summation method was applied to a series of the wrong class."""


class BreakdownError(ArithmeticError):
    """Zero pivot in the LR/QD recursion."""

    def __init__(self, message: str, index: int | None = None, step: int | None = None):
        super().__init__(message)
        self.index = index
        self.step = step


class ConvergenceError(ArithmeticError):
    """An iteration did not meet its tolerance; ``state`` holds the last iterate."""

    def __init__(self, message: str, state=None, residual=None):
        super().__init__(message)
        self.state = state
        self.residual = residual
