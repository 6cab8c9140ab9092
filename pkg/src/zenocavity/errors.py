"""Exception types shared across the package.

The CLI maps these onto exit codes: parameter/config problems -> 1,
numerical accuracy or truncation problems -> 2, I/O errors (plain
OSError) -> 3.
"""


class SimulationError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(SimulationError, ValueError):
    """Invalid parameter, dimension, schedule or configuration value."""


class ConfigError(ParameterError):
    """Bad config file or flag; message names the offending key/line."""


class HermiticityError(ParameterError):
    """A matrix that must be Hermitian is not, beyond tolerance."""


class DegeneracyError(ParameterError):
    """Degenerate apparatus levels where non-degeneracy is required."""


class TruncationError(SimulationError):
    """Fock-space truncation too small for the requested state."""

    def __init__(self, message, required_dim=None):
        super().__init__(message)
        self.required_dim = required_dim


class AccuracyError(SimulationError):
    """Numerical accuracy budget exceeded (e.g. norm drift)."""
