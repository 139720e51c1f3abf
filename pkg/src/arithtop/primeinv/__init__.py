"""Arithmetic side: residue symbols, linking numbers of primes, triple
symbols and class-group rank predictions."""

from .prediction import (
    ArithEntry,
    ArithMilnorTable,
    ClassGroupPrediction,
    PrimeSet,
    UserMuTable,
    arith_milnor_table,
    class_group_prediction,
    four_rank_prediction,
    rank_mod_p,
    redei_matrix,
    t_s_matrix,
)
from .redei import SearchExhausted, redei_triple, redei_triple_detail, sqrt_mod
from .symbols import (
    PreconditionError,
    e_s,
    gauss_sum_symbol,
    is_prime,
    legendre,
    lk_l,
    power_residue_index,
    primitive_root,
)

__all__ = [
    "ArithEntry",
    "ArithMilnorTable",
    "ClassGroupPrediction",
    "PreconditionError",
    "PrimeSet",
    "SearchExhausted",
    "UserMuTable",
    "arith_milnor_table",
    "class_group_prediction",
    "e_s",
    "four_rank_prediction",
    "gauss_sum_symbol",
    "is_prime",
    "legendre",
    "lk_l",
    "power_residue_index",
    "primitive_root",
    "rank_mod_p",
    "redei_matrix",
    "redei_triple",
    "redei_triple_detail",
    "sqrt_mod",
    "t_s_matrix",
]
