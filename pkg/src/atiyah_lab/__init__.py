"""Numerical and symbolic tools for the Atiyah determinant of point configurations."""

from .geometry import Configuration, atiyah_determinant, energy, normalized_abs

__version__ = "0.1.0"

__all__ = ["Configuration", "atiyah_determinant", "energy", "normalized_abs", "__version__"]
