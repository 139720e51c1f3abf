"""Longitudes, linking numbers, Milnor invariants and higher linking matrices
of links."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..chainring import ChainMatrix, ChainRingElt, e_d_from_divisors, snf
from ..magnus import MilnorTable, higher_fox_eps, milnor_table, multi_indices
from ..words import FreeGroup, FreeWord, commutator, parse_word
from .diagram import WirtingerPresentation

MAX_REWRITE_LENGTH = 2_000_000


class FramingError(ValueError):
    pass


class MissingMilnorError(KeyError):
    pass


@dataclass
class LinkPresentation:
    """Meridians ``x_1..x_n`` and zero-framed longitude words ``y_1..y_n``."""

    n: int
    longitudes: List[FreeWord]
    relators: List[FreeWord] = field(default_factory=list)
    accuracy: Optional[int] = None  # longitudes exact modulo F^(accuracy + 1)

    def __post_init__(self):
        if len(self.longitudes) != self.n:
            raise ValueError(f"expected {self.n} longitudes")
        for j, y in enumerate(self.longitudes, start=1):
            if y.group.rank != self.n:
                raise ValueError("longitudes must live in the free group on the meridians")
            if y.exponent_sum(j) != 0:
                raise FramingError(f"longitude y_{j} has exponent sum {y.exponent_sum(j)} in x_{j}")
        if not self.relators:
            self.relators = [commutator(self.group.gen(i), y) for i, y in enumerate(self.longitudes, start=1)]

    @property
    def group(self) -> FreeGroup:
        return FreeGroup(self.n)

    @classmethod
    def from_strings(cls, n: int, words: Sequence[str]) -> "LinkPresentation":
        F = FreeGroup(n)
        return cls(n, [parse_word(F, w) for w in words])

    def to_json(self) -> dict:
        return {"n": self.n, "longitudes": [str(y) for y in self.longitudes]}


def _substitute(word_letters: Sequence[Tuple[int, int]], images: Dict[int, FreeWord], inv: Dict[int, FreeWord],
                group: FreeGroup) -> FreeWord:
    out = group.identity()
    for g, s in word_letters:
        out = out * (images[g] if s > 0 else inv[g])
        if len(out) > MAX_REWRITE_LENGTH:
            raise RuntimeError("rewriting exceeded the length bound; input is likely invalid")
    return out


def wirtinger_longitudes(w: WirtingerPresentation, degree: int = 4) -> LinkPresentation:
    """Zero-framed longitudes in the base meridians, correct modulo the
    ``degree + 1``-st term of the lower central series.

    Each arc is expressed as a conjugate of its component's base meridian,
    refining the conjugators ``degree`` times (Milnor's procedure).
    """
    n = w.n_components
    F = FreeGroup(n)
    paths: Dict[int, List[Tuple[int, int]]] = {}
    for comp, passes in enumerate(w.under_passes, start=1):
        seq: List[Tuple[int, int]] = []
        paths[w.base_meridian[comp - 1]] = []
        for _before, over, s, after in passes:
            seq = [(over, s)] + seq
            paths.setdefault(after, list(seq))
    comp_of = {a: w.component_of[a - 1] for a in range(1, w.n_generators + 1)}
    for a in range(1, w.n_generators + 1):
        if a not in paths:
            raise ValueError(f"arc {a} is not reached when traversing its component")
    images = {a: F.gen(comp_of[a]) for a in paths}
    for _ in range(max(1, degree)):
        inv = {a: ~x for a, x in images.items()}
        new = {}
        for a, path in paths.items():
            V = _substitute(path, images, inv, F)
            new[a] = V * F.gen(comp_of[a]) * ~V
        images = new
    inv = {a: ~x for a, x in images.items()}
    longitudes = []
    for comp, passes in enumerate(w.under_passes, start=1):
        full = []
        for _before, over, s, _after in passes:
            full = [(over, s)] + full
        V = _substitute(full, images, inv, F)
        e = V.exponent_sum(comp)
        longitudes.append(V * (F.gen(comp) ** (-e)))
    return LinkPresentation(n, longitudes, accuracy=degree)


def linking_numbers(lp: LinkPresentation) -> List[List[int]]:
    """``lk(i, j)`` = exponent sum of ``x_i`` in ``y_j`` (degree-one Magnus
    coefficient); the diagonal is zero."""
    n = lp.n
    out = [[0] * n for _ in range(n)]
    for j, y in enumerate(lp.longitudes, start=1):
        for i in range(1, n + 1):
            c = y.exponent_sum(i)
            if i == j:
                if c:
                    raise FramingError(f"longitude y_{j} is not zero-framed")
            else:
                out[i - 1][j - 1] = c
    return out


def link_milnor_table(lp: LinkPresentation, D: int) -> MilnorTable:
    if lp.accuracy is not None and lp.accuracy < D - 1:
        raise ValueError(f"longitudes are only accurate to degree {lp.accuracy}; need {D - 1}")
    return milnor_table(lp.longitudes, D)


# --- nilpotent representations ---------------------------------------------

def unitriangular_entries(w: FreeWord, I: Sequence[int], modulus: int) -> List[List[int]]:
    """``rho_I(w)``: entry ``(s, t)`` is the augmented Fox derivative of ``w``
    along ``i_s .. i_{t-1}``, reduced modulo ``modulus`` (0 = no reduction)."""
    r = len(I)
    M = [[int(s == t) for t in range(r)] for s in range(r)]
    for s in range(r):
        for t in range(s + 1, r):
            v = higher_fox_eps(w, I[s:t])
            M[s][t] = v % modulus if modulus else v
    return M


def _matmul_mod(A, B, m):
    n = len(A)
    out = [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[x % m if m else x for x in row] for row in out]


@dataclass
class NilpotentReport:
    index: Tuple[int, ...]
    modulus: int
    relators_ok: bool
    corner: int
    mubar: Optional[int]
    corner_ok: bool
    off_corner_zero: bool
    failures: List[str]

    @property
    def ok(self) -> bool:
        return self.relators_ok and self.corner_ok and self.off_corner_zero


class NilpotentRep:
    """The map ``w -> rho_I(w)`` into unitriangular matrices over Z/delta."""

    def __init__(self, I: Sequence[int], modulus: int):
        self.I = tuple(I)
        self.modulus = modulus

    def __call__(self, w: FreeWord) -> List[List[int]]:
        return unitriangular_entries(w, self.I, self.modulus)

    def is_identity(self, M) -> bool:
        r = len(self.I)
        m = self.modulus
        return all(((M[s][t] - (s == t)) % m if m else M[s][t] - (s == t)) == 0
                   for s in range(r) for t in range(r))


def nilpotent_rep(lp: LinkPresentation, I: Sequence[int], table: Optional[MilnorTable] = None) -> Tuple[NilpotentRep, NilpotentReport]:
    """Build ``rho_I`` modulo ``delta(I)`` and check it against ``lp``."""
    I = tuple(I)
    if len(I) < 2:
        raise ValueError("need |I| >= 2")
    if table is None or len(I) > table.D:
        table = milnor_table(lp.longitudes, len(I))
    e = table[I]
    m = e.delta or 0
    rep = NilpotentRep(I, m)
    fails = []
    rel_ok = True
    for k, rel in enumerate(lp.relators):
        if not rep.is_identity(rep(rel)):
            rel_ok = False
            fails.append(f"relator {k + 1} does not map to the identity")
    Y = rep(lp.longitudes[I[-1] - 1])
    r = len(I)
    corner = Y[0][r - 1]
    corner_ok = corner == e.mubar
    off_zero = all(Y[s][t] == 0 for s in range(r) for t in range(s + 1, r) if (s, t) != (0, r - 1))
    if not corner_ok:
        fails.append(f"corner {corner} differs from mubar {e.mubar}")
    if not off_zero:
        fails.append("longitude image has nonzero entries off the corner")
    return rep, NilpotentReport(I, m, rel_ok, corner, e.mubar, corner_ok, off_zero, fails)


# --- higher linking matrices -------------------------------------------------

MuLookup = Callable[[Tuple[int, ...]], Tuple[int, Optional[int]]]
"""Returns ``(value, e)`` where ``value`` is known modulo ``l^e`` (``e=None``: exactly)."""


def build_linking_matrix(n: int, lookup: MuLookup, l: int, d: int) -> ChainMatrix:
    """The d-th higher linking matrix over ``O/p^d`` built from Milnor numbers.

    Diagonal: ``-sum_{r=1}^{d-1} sum_{i_r != i} mu(i_1..i_r i) pi^r``;
    off-diagonal: ``mu(j i) pi + sum_{r=1}^{d-2} sum mu(i_1..i_r j i) pi^{r+1}``.
    A value known only modulo ``l^e`` may multiply ``pi^r`` when
    ``r + e(l-1) >= d``.
    """

    def get(I: Tuple[int, ...], power: int) -> int:
        try:
            v, e = lookup(I)
        except KeyError:
            raise MissingMilnorError(f"mu{I} is not available") from None
        if e is not None and power + e * (l - 1) < d:
            raise MissingMilnorError(f"mu{I} is only known modulo {l}^{e}; not enough for level {d}")
        return v

    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            poly = [0] * (d + 1)
            if i == j:
                for r in range(1, d):
                    acc = 0
                    for idx in multi_indices(n, r):
                        if idx[-1] != i:
                            acc += get(idx + (i,), r)
                    poly[r] -= acc
            else:
                poly[1] += get((j, i), 1)
                for r in range(1, d - 1):
                    acc = 0
                    for idx in multi_indices(n, r):
                        acc += get(idx + (j, i), r + 1)
                    poly[r + 1] += acc
            row.append(ChainRingElt.from_poly(l, d, poly))
        rows.append(row)
    return ChainMatrix(l, d, rows)


def table_lookup(table: MilnorTable) -> MuLookup:
    def lookup(I):
        e = table.entries.get(tuple(I))
        if e is None:
            raise KeyError(I)
        return e.mu, None
    return lookup


def t_l_matrix(table: MilnorTable, l: int, d: int) -> ChainMatrix:
    if d < 1:
        raise ValueError("level must be positive")
    if table.D < d:
        raise MissingMilnorError(f"table has degree {table.D}, level {d} needs {d}")
    return build_linking_matrix(table.n, table_lookup(table), l, d)


@dataclass
class RankReport:
    l: int
    e: Dict[int, int]
    valuations: Dict[int, List[int]]
    warnings: List[str]

    def invariant_exponents(self) -> Optional[List[int]]:
        """Exponents ``a_i`` of ``H = sum O/p^{a_i}`` once ``e_d`` reaches 0."""
        ds = sorted(self.e)
        if not ds or self.e[ds[-1]] != 0:
            return None
        out = []
        for d in ds[:-1]:
            out += [d] * (self.e[d] - self.e[d + 1])
        return sorted(out, reverse=True)


def ranks_from_matrices(n: int, build: Callable[[int], ChainMatrix], l: int, d_max: int) -> RankReport:
    e: Dict[int, int] = {}
    vals: Dict[int, List[int]] = {}
    warnings: List[str] = []
    for d in range(1, d_max + 1):
        T = build(d)
        v = snf(T)
        vals[d] = v
        e[d] = e_d_from_divisors(v, d)
        if v and v[-1] < d:
            warnings.append(f"level {d}: last elementary divisor is not zero (valuations {v})")
        if e[d] < 0:
            warnings.append(f"level {d}: negative rank, input inconsistent")
    if e.get(1) != n - 1:
        raise ValueError(f"e_1 = {e.get(1)} differs from n - 1 = {n - 1}")
    for d in range(2, d_max + 1):
        if e[d] > e[d - 1]:
            warnings.append(f"e_{d} > e_{d - 1}")
    return RankReport(l, e, vals, warnings)


def cover_homology_ranks(lp: LinkPresentation, l: int, d_max: int, assume_qhs: bool = False,
                         table: Optional[MilnorTable] = None) -> RankReport:
    """p^d-ranks ``e_1..e_{d_max}`` of ``H_1`` of the l-fold cyclic branched cover.

    The cover must be a rational homology sphere.  For knots this always
    holds; for links it cannot be read off presentation data, so callers
    must acknowledge it with ``assume_qhs``.
    """
    n = lp.n
    if n >= 2 and not assume_qhs:
        raise ValueError("the rational homology sphere hypothesis cannot be derived; pass assume_qhs=True")
    if table is None or table.D < d_max:
        table = link_milnor_table(lp, max(2, d_max))
    return ranks_from_matrices(n, lambda d: t_l_matrix(table, l, d), l, d_max)
