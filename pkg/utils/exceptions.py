"""
Error types shared across the simulation packages.

All input-validation errors subclass ValueError so callers can keep catching
plain ValueError at the outermost layer.
"""


class DimensionError(ValueError):
    """Qubit-count or vector-length mismatch between two objects."""


class ParameterError(ValueError):
    """A numeric argument is outside its allowed range."""


class CapacityError(ValueError):
    """Problem size exceeds what a dense or exhaustive method supports."""


class ConfigError(ValueError):
    """Run configuration failed schema validation."""


class HermiticityError(AssertionError):
    """A Pauli product produced a non-real phase where a real one is required."""


class TrainingAborted(RuntimeError):
    """Training stopped because the cost became non-finite."""

    def __init__(self, message: str, checkpoint_path: str = ""):
        super().__init__(message)
        self.checkpoint_path = checkpoint_path
