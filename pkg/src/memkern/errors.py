"""Exception and warning types shared across the package."""


class MemkernError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(MemkernError):
    """Operands have incompatible shapes."""


class ConfigError(MemkernError):
    """Invalid or malformed run configuration (CLI exit code 2)."""


class ConditioningError(MemkernError):
    """A numerical object is too ill-conditioned to be trusted."""


class DecompositionError(MemkernError):
    """Eigendecomposition failed its residual certification."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class StabilizationError(MemkernError):
    """Spectral projection could not be built or failed post-verification."""


class DivergenceError(MemkernError):
    """Time stepping produced nonfinite values."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class BudgetError(MemkernError):
    """Requested dense superoperator exceeds the configured size budget."""


class PrecisionHazardWarning(UserWarning):
    """Moment magnitudes grow fast enough to threaten double precision."""


class SpectrumTailWarning(UserWarning):
    """Undamped transform of a series that has not decayed at the final time."""
