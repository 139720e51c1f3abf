"""Milnor and Alexander invariants of links, their arithmetic analogues for
sets of primes, and class-group rank predictions checked against binary
quadratic forms."""

from .chainring import ChainMatrix, ChainRingElt, e_d_from_divisors, snf, zeta_rank_inversion
from .classgroup import FormClassGroup, narrow_class_group, predict_vs_oracle
from .magnus import MilnorTable, check_symmetries, fox_derive, higher_fox_eps, magnus_expand, milnor_table
from .primeinv import PrimeSet, arith_milnor_table, class_group_prediction, legendre, lk_l, redei_triple
from .words import FreeGroup, FreeWord, parse_word

__version__ = "0.1.0"

__all__ = [
    "ChainMatrix",
    "ChainRingElt",
    "FormClassGroup",
    "FreeGroup",
    "FreeWord",
    "MilnorTable",
    "PrimeSet",
    "arith_milnor_table",
    "check_symmetries",
    "class_group_prediction",
    "e_d_from_divisors",
    "fox_derive",
    "higher_fox_eps",
    "legendre",
    "lk_l",
    "magnus_expand",
    "milnor_table",
    "narrow_class_group",
    "parse_word",
    "predict_vs_oracle",
    "redei_triple",
    "snf",
    "zeta_rank_inversion",
]
