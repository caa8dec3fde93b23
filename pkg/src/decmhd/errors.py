"""Exception types shared across the package."""


class DecmhdError(Exception):
    """Base class for all errors raised by decmhd."""


class GridDimensionError(DecmhdError, ValueError):
    """Grid constructed with too few cells or non-positive lengths."""


class FormMismatchError(DecmhdError, ValueError):
    """Operands live on different grids, degrees or staggerings."""


class UnsupportedWedgeError(DecmhdError, ValueError):
    """Requested exterior-product combination is not defined."""


class CaseParameterError(DecmhdError, ValueError):
    """Benchmark case parameters inconsistent with the grid/domain."""


class NewtonConvergenceError(DecmhdError, RuntimeError):
    """Newton iteration failed to reach the requested tolerance.

    Carries the residual-norm history of the failed solve and, when the
    failure happened inside a time loop, the index of the offending step.
    """

    def __init__(self, message, residual_history=None, step=None):
        super().__init__(message)
        self.residual_history = list(residual_history or [])
        self.step = step


class PotentialInconsistencyError(DecmhdError, RuntimeError):
    """Magnetic field is not solenoidal enough to admit a potential."""


class NoDominantModeError(DecmhdError, RuntimeError):
    """Probe spectrum has no usable dominant travelling mode."""


class SnapshotFormatError(DecmhdError, ValueError):
    """Snapshot file has a wrong magic, bad header or truncated payload."""


class ConfigError(DecmhdError, ValueError):
    """Configuration text failed to parse or validate."""
