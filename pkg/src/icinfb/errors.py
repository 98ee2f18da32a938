"""Exception types shared across the package."""

__all__ = ["ConfigError", "NumericalError", "SingularMatrixError", "CapacityError"]


class ConfigError(Exception):
    """Invalid or inconsistent run configuration."""


class NumericalError(Exception):
    """Base class for numerical failures."""


class SingularMatrixError(NumericalError):
    """Matrix inversion refused because the conditioning exceeds the cap."""


class CapacityError(NumericalError):
    """Requested computation exceeds a size or precision cap."""
