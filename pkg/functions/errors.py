"""
Errors
======
Exception types shared by the solver modules and the CLI
"""

from typing import Optional


class SpectraError(Exception):
    """Base class for everything the engine raises on purpose."""


class DomainError(SpectraError, ValueError):
    """Physical input outside the domain of a formula."""

    def __init__(self, message: str, value: Optional[float] = None):
        super().__init__(message)
        self.value = value


class ConfigError(SpectraError, ValueError):
    """Invalid run configuration (unknown keys, bad radii, bad units)."""


class FrobeniusError(SpectraError, ArithmeticError):
    """Series start at the origin cannot be built."""


class IntegrationError(SpectraError, RuntimeError):
    """Adaptive integration failed; carries the radius where it stopped."""

    def __init__(self, message: str, radius: Optional[float] = None):
        super().__init__(message if radius is None else f"{message} (r = {radius:.6g})")
        self.radius = radius


class AccuracyError(SpectraError, ArithmeticError):
    """A quadrature self-estimate exceeded the requested tolerance."""
