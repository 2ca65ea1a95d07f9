"""Exception types shared across the package."""


class ConsistencyError(RuntimeError):
    """A quantity violated a model invariant (e.g. a log argument went
    non-positive, or an error covariance lost positive definiteness).

    This signals a bug in the moment supply or estimates that are too noisy,
    never a legitimate parameter choice."""


class NotPositiveDefiniteError(ValueError):
    """A matrix required to be Hermitian positive definite is not.

    The failing pivot index is stored in ``pivot``."""

    def __init__(self, message: str, pivot: int):
        super().__init__(message)
        self.pivot = pivot
