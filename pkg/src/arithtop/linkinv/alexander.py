"""Alexander matrices and polynomials from Wirtinger presentations, orders of
cyclic branched covers, and the Iwasawa-type growth fit."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..magnus import fox_derive
from ..words import GroupRingElt
from .diagram import WirtingerPresentation
from .laurent import LaurentPoly, bareiss_det, poly_gcd, resultant

AlexanderMatrix = List[List[LaurentPoly]]


def abelianize(e: GroupRingElt) -> LaurentPoly:
    """Image under the map sending every generator to ``t``."""
    out: Dict[int, int] = {}
    for w, c in e.terms.items():
        k = sum(1 if a > 0 else -1 for a in w.letters)
        out[k] = out.get(k, 0) + c
    return LaurentPoly(out)


def alexander_matrix(w: WirtingerPresentation) -> AlexanderMatrix:
    """Rows are relators, columns generators; entries are abelianized Fox
    derivatives."""
    g = w.n_generators
    rows = []
    for rel in w.relators:
        e = GroupRingElt.from_word(rel)
        rows.append([abelianize(fox_derive(e, i)) for i in range(1, g + 1)])
    return rows


def _to_dense(p: LaurentPoly, shift: int) -> List[int]:
    if p.is_zero():
        return []
    q = p.shift(shift)
    return [q.coeffs.get(k, 0) for k in range(q.max_exp() + 1)]


def _minor(M: AlexanderMatrix, rows: Sequence[int], cols: Sequence[int]) -> LaurentPoly:
    sub = [[M[r][c] for c in cols] for r in rows]
    shifts = []
    for row in sub:
        nz = [p.min_exp() for p in row if not p.is_zero()]
        shifts.append(-min(nz) if nz else 0)
    dense = [[_to_dense(p, s) for p in row] for row, s in zip(sub, shifts)]
    det = bareiss_det(dense)
    return LaurentPoly.from_list(det, shift=-sum(shifts))


def minors(M: AlexanderMatrix, k: int, cols: Optional[Sequence[int]] = None) -> List[LaurentPoly]:
    """All ``k x k`` minors, optionally restricted to a set of columns."""
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    cols = list(range(ncols)) if cols is None else list(cols)
    if k == 0:
        return [LaurentPoly.const(1)]
    out = []
    for rs in combinations(range(nrows), k):
        for cs in combinations(cols, k):
            out.append(_minor(M, rs, cs))
    return out


def laurent_gcd(polys: Sequence[LaurentPoly]) -> LaurentPoly:
    g: List[int] = []
    for p in polys:
        if p.is_zero():
            continue
        g = poly_gcd(g, p.normalize().to_list())
    return LaurentPoly.from_list(g).normalize() if g else LaurentPoly()


class AlexanderError(ValueError):
    pass


@dataclass
class AlexanderResult:
    polynomial: LaurentPoly
    raw_minors: List[LaurentPoly]
    value_at_one: int


def alexander_polynomial_detail(w: WirtingerPresentation, drop_column: Optional[int] = None) -> AlexanderResult:
    if w.n_components != 1:
        raise AlexanderError("the Alexander polynomial pipeline handles knots only")
    M = alexander_matrix(w)
    g = w.n_generators
    if drop_column is None:
        drop_column = g - 1
    cols = [c for c in range(g) if c != drop_column]
    if not M:
        return AlexanderResult(LaurentPoly.const(1), [LaurentPoly.const(1)], 1)
    ms = minors(M, g - 1, cols)
    poly = laurent_gcd(ms)
    if poly.is_zero():
        raise AlexanderError("all minors vanish; degenerate input")
    return AlexanderResult(poly, ms, poly.evaluate(1))


def alexander_polynomial(w: WirtingerPresentation, drop_column: Optional[int] = None) -> LaurentPoly:
    """Gcd of the maximal minors after deleting one column, in unit normal form."""
    return alexander_polynomial_detail(w, drop_column).polynomial


def reduced_link_polynomial(w: WirtingerPresentation) -> LaurentPoly:
    """Gcd of the maximal minors with the last column deleted, for any number
    of components (every meridian sent to ``t``).  May be zero."""
    M = alexander_matrix(w)
    g = w.n_generators
    if not M or g == 1:
        return LaurentPoly.const(1)
    return laurent_gcd(minors(M, g - 1, list(range(g - 1))))


def cyclic_cover_is_qhs(w: WirtingerPresentation, l: int) -> bool:
    """Whether the l-fold cyclic branched cover (all meridians to ``t``) has
    finite first homology: the reduced polynomial has no root among the
    nontrivial l-th roots of unity."""
    if l < 2:
        raise ValueError("l must be at least 2")
    poly = reduced_link_polynomial(w)
    if poly.is_zero():
        return False
    cyclo = [1] * l  # 1 + t + ... + t^{l-1}
    return resultant(poly.normalize().to_list(), cyclo) != 0


def branched_cover_order(delta: LaurentPoly, n: int) -> int:
    """``|Res(delta, t^n - 1)|``: order of ``H_1`` of the n-fold cyclic
    branched cover; 0 means infinite."""
    if n < 1:
        raise ValueError("fold must be at least 1")
    d = delta.normalize().to_list()
    cyclo = [-1] + [0] * (n - 1) + [1]
    return abs(resultant(d, cyclo))


def p_valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass
class GrowthFit:
    p: int
    valuations: List[int]
    lam: float
    mu: float
    nu: float
    residuals: List[float]
    exact_tail: bool

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "valuations": self.valuations,
            "lambda": round(self.lam, 9),
            "mu": round(self.mu, 9),
            "nu": round(self.nu, 9),
            "residuals": [round(r, 9) for r in self.residuals],
            "exact_tail": self.exact_tail,
        }


def iwasawa_growth_check(delta: LaurentPoly, p: int, n_max: int, tail: int = 3) -> GrowthFit:
    """Fit ``v_k = lambda k + mu p^k + nu`` to the p-adic valuations of the
    ``p^k``-fold branched cover orders, ``k = 1..n_max``.

    The fit uses the last ``tail`` points (least squares); ``exact_tail``
    reports whether it reproduces them to rounding error.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    vals = []
    for k in range(1, n_max + 1):
        order = branched_cover_order(delta, p ** k)
        if order == 0:
            raise ValueError(f"infinite homology at fold {p}^{k}")
        vals.append(p_valuation(order, p))
    ks = list(range(1, n_max + 1))
    use = ks[-tail:] if len(ks) >= tail else ks
    A = np.array([[k, float(p ** k), 1.0] for k in use])
    b = np.array([vals[k - 1] for k in use], dtype=float)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    lam, mu, nu = (float(x) for x in sol)
    res = [vals[k - 1] - (lam * k + mu * p ** k + nu) for k in ks]
    exact = all(abs(res[k - 1]) < 1e-6 for k in use)
    return GrowthFit(p, vals, lam, mu, nu, res, exact)
