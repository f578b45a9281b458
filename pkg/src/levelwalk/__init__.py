"""Absorbing random walks on two levels and on an unbounded ladder of levels."""

from .errors import DomainError, RangeError, SimulationError, SumError, WalkError, WindowError
from .params import SingleSpectrum, TwoLevelSpectrum, WalkParams, single_spectrum, two_level_spectrum, validate

__all__ = [
    "DomainError",
    "RangeError",
    "SimulationError",
    "SingleSpectrum",
    "SumError",
    "TwoLevelSpectrum",
    "WalkError",
    "WalkParams",
    "WindowError",
    "single_spectrum",
    "two_level_spectrum",
    "validate",
]

__version__ = "0.1.0"
