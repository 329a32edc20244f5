"""Schubert and Grothendieck polynomials of classical types from nil-Hecke and id-Coxeter products."""

from .involution import InvolutionSpace, PipeDream
from .nilhecke import AlgebraElement, brute_polynomial, build_product, h_multiply, specialized_product
from .permgroup import (
    GroupKind,
    NotInGroupError,
    SignedPermutation,
    coxeter_length,
    demazure_product,
    elements,
    reduced_word,
    star,
)
from .polyring import LaurentSeries, PolyRing, SoundnessError, SparsePoly, expand_rational, principal_specialize
from .verify import Report, lhs_series, rhs_series
from .words import Letter, LetterWord, WordKind, compatible_sequences, hecke_words, reduced_words, statistic

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "GroupKind",
    "InvolutionSpace",
    "LaurentSeries",
    "Letter",
    "LetterWord",
    "NotInGroupError",
    "PipeDream",
    "PolyRing",
    "Report",
    "SignedPermutation",
    "SoundnessError",
    "SparsePoly",
    "WordKind",
    "brute_polynomial",
    "build_product",
    "compatible_sequences",
    "coxeter_length",
    "demazure_product",
    "elements",
    "expand_rational",
    "h_multiply",
    "hecke_words",
    "lhs_series",
    "principal_specialize",
    "reduced_word",
    "reduced_words",
    "rhs_series",
    "star",
    "statistic",
]
