# alkkit/__init__.py
"""
alk-kit - exact surface-group words, Goldman brackets and the affine linking
invariant of two-component links in F_g x S^1.
"""
__version__ = "1.0.0"

from .bordism import BClass, Bor0Elem, epsilon
from .goldman import LoopClassCombination, bracket_bilinear, goldman_bracket
from .linkflow import AlkValue, alk, delta_alk, enumerate_distinct_bclasses, vg_second_derivative
from .movie import LinkMovie
from .obstruct import disjointable_necessary, mu00, winding
from .polygon import FundamentalPolygon
from .presets import indet_preset
from .surface import PLLoop, PLLoop3, intersections, perturb_to_generic, torus_line, word_of_loop
from .sweep import detect_crossings
from .words import (
    CyclicClass, Elem3, Word, conjugacy_canonical, double_coset_equal, normal_form,
    primitive_root, reduce, simultaneous_canonical,
)

__all__ = [
    "AlkValue", "BClass", "Bor0Elem", "CyclicClass", "Elem3", "FundamentalPolygon", "LinkMovie",
    "LoopClassCombination", "PLLoop", "PLLoop3", "Word", "alk", "bracket_bilinear",
    "conjugacy_canonical", "delta_alk", "detect_crossings", "disjointable_necessary",
    "double_coset_equal", "enumerate_distinct_bclasses", "epsilon", "goldman_bracket",
    "indet_preset", "intersections", "mu00", "normal_form", "perturb_to_generic",
    "primitive_root", "reduce", "simultaneous_canonical", "torus_line", "vg_second_derivative",
    "winding", "word_of_loop",
]
