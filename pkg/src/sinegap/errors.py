"""Exception and warning types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument is outside the documented domain."""


class BoundaryError(InvalidArgumentError):
    """A point lies on (or numerically on) the orthogonality arc."""


class OutOfRegimeError(InvalidArgumentError):
    """An asymptotic formula was requested outside its regime of validity."""


class DomainError(ArithmeticError):
    """A matrix expected to be positive definite is not.

    ``index`` is the position of the offending pivot or eigenvalue.
    """

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class ConditioningError(ArithmeticError):
    """The requested computation exceeds what the working precision can resolve.

    ``index`` identifies where the breakdown happened (a pivot or a degree).
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class AccuracyWarning(UserWarning):
    """A self-convergence check did not reach its tolerance."""
