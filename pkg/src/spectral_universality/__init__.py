"""Exact spectral functions of the Laplacian on model manifolds and the
numerical checks of their universal rescaled limit."""

from .errors import DomainError, FitError, ResourceError
from .profile import RadialProfile

__version__ = "0.1.0"

__all__ = ["DomainError", "FitError", "ResourceError", "RadialProfile"]
