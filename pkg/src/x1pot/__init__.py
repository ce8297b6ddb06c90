"""Exactly solvable extensions of the radial oscillator and Scarf I potentials.

Bound states are built from Laguerre- and Jacobi-type X1 exceptional
orthogonal polynomials and checked against an independent finite-difference
oracle.
"""
from .errors import BuildError, ConstructionError, DomainError, NumericError
from .models import OscillatorParams, ScarfParams, WavefunctionTable

__all__ = [
    "BuildError",
    "ConstructionError",
    "DomainError",
    "NumericError",
    "OscillatorParams",
    "ScarfParams",
    "WavefunctionTable",
]
