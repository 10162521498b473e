"""Numerical checks of sharp Schwarz, length, area and diameter estimates for harmonic maps of the unit disk."""

from .analysis import GeometryReport, analyze
from .errors import HDLError
from .series import ComplexSeries, PlanarHarmonicMap, VectorHarmonicMap

__all__ = ["ComplexSeries", "PlanarHarmonicMap", "VectorHarmonicMap", "GeometryReport", "analyze", "HDLError"]
__version__ = "0.1.0"
