"""Exception types shared across the toolkit."""


class EdemlogError(Exception):
    """Base class for all toolkit errors."""


class DomainError(EdemlogError, ValueError):
    """An argument is outside the physical or numerical domain of an operation."""


class ConvergenceError(EdemlogError, RuntimeError):
    """An iterative evaluation failed to reach the requested tolerance."""

    def __init__(self, message, achieved_tol=None):
        super().__init__(message)
        self.achieved_tol = achieved_tol


class ConfigError(EdemlogError, ValueError):
    """A tool or dataset configuration is invalid or internally inconsistent."""


class DataError(EdemlogError, ValueError):
    """Input data violates a contract (bad value, bad file, bad shape)."""


class SimulationError(EdemlogError, RuntimeError):
    """A forward simulation could not be carried out for the given model."""


class NumericError(EdemlogError, RuntimeError):
    """A numeric computation produced nonfinite values."""
