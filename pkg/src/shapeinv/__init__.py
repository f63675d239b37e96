"""Hypergeometric-type families, their ladder algebra and the associated
shape-invariant Schrodinger problems."""
from .errors import (ComputationError, InvalidInput, ShapeInvError, Unsupported)
from .family import Family, SigmaCase, build_family, eigenvalue, power_weight_exponent
from .ladder import LayeredFunction, associated, lower_m, raise_m
from .polycore import classical_reference, generate_phi
from .tilde import make_tilde

__all__ = [
    "ComputationError", "Family", "InvalidInput", "LayeredFunction", "ShapeInvError",
    "SigmaCase", "Unsupported", "associated", "build_family", "classical_reference",
    "eigenvalue", "generate_phi", "lower_m", "make_tilde", "power_weight_exponent", "raise_m",
]

__version__ = "0.1.0"
