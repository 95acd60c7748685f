"""Shared exception types."""


class PoleError(ValueError):
    """A gamma-type product was evaluated at a pole.

    ``order`` records the pole order (the number of offending factors).
    """

    def __init__(self, message: str, order: int = 1):
        super().__init__(message)
        self.order = order


class UnsupportedRegimeError(ValueError):
    """Parameters fall outside the regime covered by the closed forms."""


class NotPositiveDefiniteError(ValueError):
    """A matrix required to be symmetric positive definite is not."""
