"""Worked examples with known answers, run by ``arithtop selftest``."""

from __future__ import annotations

from importlib import resources
from itertools import permutations
from typing import Callable, List, Tuple

from .classgroup import narrow_class_group, predict_vs_oracle, two_sylow
from .linkinv import (
    LinkPresentation,
    alexander_polynomial,
    branched_cover_order,
    cover_homology_ranks,
    link_milnor_table,
    load_link_file,
    pd_to_wirtinger,
    wirtinger_longitudes,
)
from .magnus import check_symmetries
from .primeinv import (
    PrimeSet,
    arith_milnor_table,
    class_group_prediction,
    legendre,
    lk_l,
    power_residue_index,
    redei_triple,
    t_s_matrix,
)


def data_path(name: str) -> str:
    return str(resources.files("arithtop") / "data" / name)


def load_link(name: str, degree: int = 4) -> LinkPresentation:
    obj = load_link_file(data_path(name))
    if isinstance(obj, tuple):
        n, words = obj
        return LinkPresentation.from_strings(n, words)
    return wirtinger_longitudes(pd_to_wirtinger(obj), degree)


def _borromean_primes() -> bool:
    ps = [13, 61, 937]
    pairs = [(p, q) for p in ps for q in ps if p != q]
    ok = all(lk_l(p, q, 2) == 0 for p, q in pairs)
    ok &= all(power_residue_index(q, p, 4) == 0 for p, q in pairs)
    ok &= all(redei_triple(*t) == -1 for t in permutations(ps))
    return ok


def _three_prime_prediction() -> bool:
    S = PrimeSet(2, [13, 61, 937])
    T = t_s_matrix(arith_milnor_table(S), 3).to_ints()
    pred = class_group_prediction(S, 3)
    cmp = predict_vs_oracle(S, 3, pred)
    return (T == [[0, 4, 4], [4, 0, 4], [4, 4, 0]]
            and pred.valuations[3] == [2, 2, 3]
            and pred.e == {1: 2, 2: 2, 3: 0}
            and pred.exponents == [2, 2]
            and two_sylow(cmp.group).invariant_factors == [4, 4]
            and cmp.passed)


def _whitehead_borromean_mubar() -> bool:
    wh = link_milnor_table(load_link("whitehead.json"), 4)
    ok = all(wh.mubar(I) == 0 for I in wh.indices(2) + wh.indices(3))
    ok &= wh.signed_mubar((1, 1, 2, 2)) == 1 and wh.signed_mubar((1, 2, 1, 2)) == -2
    bo = link_milnor_table(load_link("borromean.json"), 3)
    ok &= all(bo.mu(I) == 0 for I in bo.indices(2))
    ok &= all(abs(bo.signed_mubar(I)) == 1 for I in permutations((1, 2, 3)))
    ok &= not check_symmetries(bo) and not check_symmetries(wh)
    return ok


def _whitehead_cover_ranks() -> bool:
    lp = load_link("whitehead.json")
    ok = True
    for l in (2, 3):
        r = cover_homology_ranks(lp, l, 4, assume_qhs=True)
        ok &= r.e[3] == 1 and r.e[4] == 0
    return ok


def _alexander() -> bool:
    tre = pd_to_wirtinger(load_link_file(data_path("trefoil.pd")))
    fig = pd_to_wirtinger(load_link_file(data_path("figure8.pd")))
    a, b = alexander_polynomial(tre), alexander_polynomial(fig)
    return (a.to_list() == [1, -1, 1] and b.to_list() == [1, -3, 1]
            and branched_cover_order(a, 2) == 3)


def _reciprocity() -> bool:
    from .primeinv import is_prime
    ps = [p for p in range(5, 500) if p % 4 == 1 and is_prime(p)]
    return all(lk_l(p, q, 2) == lk_l(q, p, 2) for p in ps for q in ps if p != q)


def _legendre() -> bool:
    return legendre(13, 61) == 1 and legendre(5, 13) == -1 and narrow_class_group(5).order == 1


CHECKS: List[Tuple[str, Callable[[], bool]]] = [
    ("Borromean primes: lk_2 = 0, mu_4(ij) = 0, triple symbols -1", _borromean_primes),
    ("S = {13, 61, 937}: T_S^(3), e_2 = 2, e_3 = 0, 2-Sylow Z/4 + Z/4", _three_prime_prediction),
    ("Whitehead and Borromean mu-bar invariants", _whitehead_borromean_mubar),
    ("Whitehead cover: e_3 = 1, e_4 = 0 for l = 2, 3", _whitehead_cover_ranks),
    ("Alexander polynomials of trefoil and figure-eight", _alexander),
    ("lk_2 symmetry for primes 1 mod 4 below 500", _reciprocity),
    ("Legendre symbols and a trivial class group", _legendre),
]


def run_selftest() -> List[Tuple[str, bool, str]]:
    out = []
    for name, fn in CHECKS:
        try:
            out.append((name, bool(fn()), ""))
        except Exception as exc:  # report, don't abort the remaining checks
            out.append((name, False, f"{type(exc).__name__}: {exc}"))
    return out


if __name__ == "__main__":  # pragma: no cover
    results = run_selftest()
    for name, ok, err in results:
        print("PASS" if ok else "FAIL", name, err)
    raise SystemExit(0 if all(ok for _, ok, _ in results) else 1)
