"""Exact computations with pairs of Leibniz algebras: Lie-centers, Lie-commutators,
stem pairs, factor sets, extensions and Lie-isoclinism certificates."""

from .algebra import LeibnizAlgebra, LinearMap, bracket, check_leibniz, hom_check
from .catalog import catalog
from .errors import LeibnizError
from .exactla import GF, QQ, Field, Matrix, Subspace
from .extension import build_extension, factor_set_from_pair, lemma2_reconstruct
from .isoclinism import (
    IsoclinismCertificate,
    search_isoclinism,
    search_pair_isomorphism,
    theorem3_construct,
    verify_certificate,
)
from .pairs import Pair, epsilon_condition, is_stem, stem_reduce

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "Field",
    "IsoclinismCertificate",
    "LeibnizAlgebra",
    "LeibnizError",
    "LinearMap",
    "Matrix",
    "Pair",
    "Subspace",
    "bracket",
    "build_extension",
    "catalog",
    "check_leibniz",
    "epsilon_condition",
    "factor_set_from_pair",
    "hom_check",
    "is_stem",
    "lemma2_reconstruct",
    "search_isoclinism",
    "search_pair_isomorphism",
    "stem_reduce",
    "theorem3_construct",
    "verify_certificate",
]
