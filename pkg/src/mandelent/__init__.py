"""Exact combinatorics of the real and principal-vein slices of the Mandelbrot set.

Angles are exact rationals. Entropy of Hubbard trees is computed three ways
(Markov automaton, kneading determinant, lap counts) and converted to the
Hausdorff dimension of the associated sets of external angles.
"""

from .angles import Angle, Arc, BinaryExpansion, Leaf, double, ell, tent, leaf_length, leaf_separates
from .angles import format_angle, parse_angle
from .symbolic import RunString, runlength, alt_lex_compare, double_lt, is_extremal, is_dominant
from .symbolic import dominant_approximations, pseudocenter
from .realline import Window, embed_F, enumerate_windows, member, next_window, tune
from .veins import OrbitPortrait, orbit_portrait, surgery, surgery_inverse
from .entropy import EntropyResult, dimension_of, param_dimension_estimate

__all__ = [
    "Angle", "Arc", "BinaryExpansion", "Leaf", "double", "ell", "tent", "leaf_length", "leaf_separates",
    "format_angle", "parse_angle",
    "RunString", "runlength", "alt_lex_compare", "double_lt", "is_extremal", "is_dominant",
    "dominant_approximations", "pseudocenter",
    "Window", "embed_F", "enumerate_windows", "member", "next_window", "tune",
    "OrbitPortrait", "orbit_portrait", "surgery", "surgery_inverse",
    "EntropyResult", "dimension_of", "param_dimension_estimate",
]

__version__ = "0.1.0"
