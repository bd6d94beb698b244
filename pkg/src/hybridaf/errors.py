"""Exception types raised by the solver and its helpers."""


class HybridAFError(Exception):
    """Base class for all package errors."""


class ConfigurationError(HybridAFError, ValueError):
    """Invalid mesh, scheme or run configuration."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class PositivityError(HybridAFError, ValueError):
    """A state left the admissible set (non-positive density or pressure)."""


class SolverError(HybridAFError, RuntimeError):
    """Time integration failed (NaN or inadmissible state with limiting off)."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class VacuumError(HybridAFError, ValueError):
    """Riemann data generate a vacuum."""


class CharacteristicsCrossedError(HybridAFError, ValueError):
    """The smooth solution no longer exists: characteristics have crossed."""


class NotFoundError(HybridAFError, LookupError):
    """A requested feature (e.g. a shock) is absent from the data."""
