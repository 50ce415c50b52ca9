"""Exception types shared across the package."""


class CQNLSError(Exception):
    """Base class for all package errors."""


class InvalidConfigError(CQNLSError):
    """Rejected grid / run configuration (bad sizes, signs, unknown ids)."""


class InvalidFrequencyError(CQNLSError):
    """Frequency outside the admissible window of the requested model."""


class OutOfRangeError(CQNLSError):
    """Scalar argument outside its mathematically valid range."""


class DomainTooSmallError(CQNLSError):
    """Initial data does not decay below tolerance at the domain boundary."""


class DomainMismatchError(CQNLSError):
    """Radial profile does not cover the target grid."""


class NoConvergenceError(CQNLSError):
    """Iterative solver failed to converge.

    Carries the last residual norm in ``residual``.
    """

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class DivergedError(CQNLSError):
    """Time integration produced NaN/Inf; carries the failing step index."""

    def __init__(self, message: str, step: int = -1):
        super().__init__(message)
        self.step = step


class FitImpossibleError(CQNLSError):
    """Peak amplitude outside the invertible range of the soliton family."""


class SnapshotFormatError(CQNLSError):
    """Malformed snapshot file; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
