"""Exception types shared across the package."""


class DegenerateMeshError(RuntimeError):
    """A mesh element collapsed below the minimum admissible length."""


class ConfigurationError(ValueError):
    """A problem or run configuration is inconsistent or unsupported."""


class SolverError(RuntimeError):
    """The linear solver failed to meet its residual contract."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InconsistentReferenceError(RuntimeError):
    """A candidate energy fell below the exact reference by more than
    roundoff, which signals inexact integration of the load."""
