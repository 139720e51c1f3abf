"""Prime sets, arithmetic Milnor tables and class-group rank predictions.

For ``S = {p_1, ..., p_n}`` with ``p_i = 1 mod l`` the computed entries are

* ``mu(ij)``: the index of ``(p_j/p_i)_m``, known modulo ``m = l^{e_S}``;
* ``mu(ii) = mu(iii) = 0`` by convention (a prime does not link itself);
* for ``l = 2``: ``mu(iij) = C(mu(ij), 2)``, known modulo ``2^{e_S - 1}``,
  since killing every generator but ``x_i`` leaves ``y_j = x_i^{mu(ij)}``;
* for ``l = 2`` and ``(p_i/p_j) = 1``: ``mu(iji) = mu(jii) = mu(iij)`` mod 2
  (cyclic symmetry modulo the indeterminacy);
* for ``l = 2``, distinct ``i, j, k`` with all pairwise Legendre symbols
  ``+1``: ``mu(ijk) = 1`` iff the triple symbol ``[p_i, p_j, p_k]`` is
  ``-1``, known mod 2.

Anything else must come from a user table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..chainring import ChainMatrix
from ..linkinv.invariants import (
    MissingMilnorError,
    RankReport,
    build_linking_matrix,
    ranks_from_matrices,
)
from ..magnus import MilnorTable, check_symmetries
from .redei import redei_triple
from .symbols import PreconditionError, e_s, is_prime, legendre, lk_l, power_residue_index

MultiIndex = Tuple[int, ...]


class PrimeSet:
    """Distinct odd primes congruent to 1 modulo ``l``.

    For ``l = 2`` the primes must be 1 mod 4, the setting in which the
    mod-2 linking number is symmetric.
    """

    def __init__(self, l: int, primes: Sequence[int]):
        if not is_prime(l):
            raise PreconditionError(f"l = {l} is not prime")
        primes = [int(p) for p in primes]
        if not primes:
            raise PreconditionError("need at least one prime")
        if len(set(primes)) != len(primes):
            raise PreconditionError("primes must be pairwise distinct")
        for p in primes:
            if p == 2 or not is_prime(p):
                raise PreconditionError(f"{p} is not an odd prime")
            if (p - 1) % l:
                raise PreconditionError(f"{p} is not congruent to 1 mod {l}")
            if l == 2 and p % 4 != 1:
                raise PreconditionError(f"{p} is not congruent to 1 mod 4")
        self.l = l
        self.primes = primes
        self.e_S = e_s(primes, l)

    @property
    def n(self) -> int:
        return len(self.primes)

    @property
    def modulus(self) -> int:
        return self.l ** self.e_S

    def discriminant(self) -> int:
        """Product of the primes: the discriminant of ``Q(sqrt(p_1...p_n))``
        when ``l = 2``."""
        out = 1
        for p in self.primes:
            out *= p
        return out

    @classmethod
    def from_json(cls, data) -> "PrimeSet":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data.get("l", 2)), data["primes"])

    def to_json(self) -> dict:
        return {"l": self.l, "primes": list(self.primes)}

    def __repr__(self) -> str:
        return f"PrimeSet(l={self.l}, primes={self.primes})"


@dataclass(frozen=True)
class ArithEntry:
    value: int
    e: Optional[int]  # known modulo l^e; None means exact
    provenance: str


@dataclass
class Conflict:
    index: MultiIndex
    computed: int
    supplied: int
    modulus: int


@dataclass
class ArithMilnorTable:
    prime_set: PrimeSet
    entries: Dict[MultiIndex, ArithEntry]
    unavailable: Dict[MultiIndex, str] = field(default_factory=dict)
    conflicts: List[Conflict] = field(default_factory=list)

    @property
    def l(self) -> int:
        return self.prime_set.l

    @property
    def n(self) -> int:
        return self.prime_set.n

    def lookup(self, I: Sequence[int]) -> Tuple[int, Optional[int]]:
        e = self.entries.get(tuple(I))
        if e is None:
            reason = self.unavailable.get(tuple(I), "not computed")
            raise KeyError(f"{tuple(I)}: {reason}")
        return e.value, e.e

    def value_mod(self, I: Sequence[int], m: int) -> int:
        """Entry reduced modulo ``m``; raises if not known that precisely."""
        v, e = self.lookup(I)
        if e is not None and (self.l ** e) % m:
            raise MissingMilnorError(f"mu{tuple(I)} is only known modulo {self.l}^{e}")
        return v % m

    def reduced(self, m: int) -> Dict[MultiIndex, int]:
        """All entries that are known modulo ``m``."""
        out = {}
        for I, ent in self.entries.items():
            if ent.e is None or (self.l ** ent.e) % m == 0:
                out[I] = ent.value % m
        return out

    def as_milnor_table(self, m: int, D: int = 3) -> MilnorTable:
        """Reduced table mod ``m`` with the binomial indeterminacy for ``l^{e_S}``."""
        mu = {I: v for I, v in self.reduced(m).items() if 2 <= len(I) <= D}
        prov = {I: self.entries[I].provenance for I in mu}
        return MilnorTable.from_mu(self.n, D, mu, modulus=m,
                                   l_power=self.prime_set.modulus, provenance=prov)

    def check_shuffles(self, m: Optional[int] = None):
        """Shuffle relations ``sum_H mubar_m(Hk) = 0`` for ``|Hk| <= l^{e_S}``.

        Cyclic symmetry is not checked: arithmetic linking numbers are not
        symmetric beyond quadratic residues."""
        m = self.l if m is None else m
        t = self.as_milnor_table(m, 3 if self.l == 2 else 2)
        return check_symmetries(t, cyclic=False, max_length=self.prime_set.modulus)

    def merge_user(self, user: "UserMuTable") -> None:
        """Fill missing entries from a user table; disagreements with computed
        entries are recorded as conflicts and the computed value kept."""
        e_user = _log(self.l, user.m)
        for I, v in user.entries.items():
            if any(i < 1 or i > self.n for i in I):
                raise ValueError(f"user entry {I} refers to a prime outside 1..{self.n}")
            cur = self.entries.get(I)
            if cur is None:
                self.entries[I] = ArithEntry(v % user.m, e_user, "user-supplied")
                self.unavailable.pop(I, None)
                continue
            common = user.m if cur.e is None else min(user.m, self.l ** cur.e)
            if (cur.value - v) % common:
                self.conflicts.append(Conflict(I, cur.value % common, v % common, common))

    def to_rows(self) -> List[dict]:
        rows = []
        keys = set(self.entries) | set(self.unavailable)
        for I in sorted(keys, key=lambda t: (len(t), t)):
            ent = self.entries.get(I)
            rows.append({
                "index": " ".join(map(str, I)),
                "value": None if ent is None else ent.value,
                "modulus": None if ent is None or ent.e is None else self.l ** ent.e,
                "provenance": "unavailable" if ent is None else ent.provenance,
                "note": self.unavailable.get(I, ""),
            })
        return rows


def _log(l: int, m: int) -> int:
    e = 0
    while m % l == 0:
        m //= l
        e += 1
    if m != 1:
        raise ValueError(f"modulus must be a power of {l}")
    return e


class UserMuTable:
    """User-supplied ``mu`` values: ``{"m": 8, "entries": {"1 2 1": 3}}``."""

    def __init__(self, m: int, entries: Mapping[MultiIndex, int]):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        self.m = m
        self.entries = {tuple(k): int(v) % m for k, v in entries.items()}

    @classmethod
    def from_json(cls, data) -> "UserMuTable":
        if isinstance(data, str):
            data = json.loads(data)
        entries = {}
        for key, v in data["entries"].items():
            idx = tuple(int(t) for t in key.split())
            if len(idx) < 2:
                raise ValueError(f"bad multi-index {key!r}")
            entries[idx] = v
        return cls(int(data["m"]), entries)

    @classmethod
    def load(cls, path) -> "UserMuTable":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def arith_milnor_table(S: PrimeSet, m: Optional[int] = None,
                       user: Optional[UserMuTable] = None) -> ArithMilnorTable:
    """Computed ``mu`` entries for ``S`` (``|I| <= 2`` for all l, ``|I| = 3``
    for ``l = 2``), each at its native precision capped at ``m``."""
    l, n, ps = S.l, S.n, S.primes
    mS = S.modulus
    if m is None:
        m = mS
    if mS % m:
        raise PreconditionError(f"m = {m} does not divide l^e_S = {mS}")
    e_cap = _log(l, m)

    def cap(e):
        return e_cap if e is None else min(e, e_cap)

    entries: Dict[MultiIndex, ArithEntry] = {}
    unavailable: Dict[MultiIndex, str] = {}
    pair: Dict[Tuple[int, int], int] = {}
    for i in range(1, n + 1):
        entries[(i, i)] = ArithEntry(0, None, "convention")
        for j in range(1, n + 1):
            if i != j:
                pair[i, j] = power_residue_index(ps[j - 1], ps[i - 1], mS)
                entries[(i, j)] = ArithEntry(pair[i, j] % m, cap(S.e_S), "computed")

    if l == 2 and n >= 1:
        for i in range(1, n + 1):
            entries[(i, i, i)] = ArithEntry(0, None, "convention")
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                e_iij = cap(S.e_S - 1)
                if e_iij > 0:
                    entries[(i, i, j)] = ArithEntry(comb(pair[i, j], 2) % (2 ** e_iij), e_iij, "computed")
                else:
                    unavailable[(i, i, j)] = "needs mu(ij) modulo 4"
                for rot in ((i, j, i), (j, i, i)):
                    if legendre(ps[i - 1], ps[j - 1]) == 1 and e_iij > 0:
                        entries[rot] = ArithEntry(comb(pair[i, j], 2) % 2, 1, "computed")
                    else:
                        unavailable[rot] = "linking number mod 2 is nonzero"
        for i, j, k in permutations(range(1, n + 1), 3):
            a, b, c = ps[i - 1], ps[j - 1], ps[k - 1]
            if all(legendre(x, y) == 1 for x, y in permutations((a, b, c), 2)):
                sym = redei_triple(a, b, c)
                entries[(i, j, k)] = ArithEntry(0 if sym == 1 else 1, 1, "computed")
            else:
                unavailable[(i, j, k)] = "pairwise Legendre symbols are not all +1"

    table = ArithMilnorTable(S, entries, unavailable)
    if user is not None:
        table.merge_user(user)
    return table


# --- Rédei matrix and rank predictions --------------------------------------

def redei_matrix(S: PrimeSet) -> List[List[int]]:
    """``lk_l(p_i, p_j)`` off the diagonal, minus the row sums on it."""
    l, n, ps = S.l, S.n, S.primes
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                M[i][j] = lk_l(ps[i], ps[j], l)
        M[i][i] = -sum(M[i][j] for j in range(n) if j != i)
    return M


def rank_mod_p(M: Sequence[Sequence[int]], p: int) -> int:
    A = [[x % p for x in row] for row in M]
    rank = 0
    rows = len(A)
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(rows):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def four_rank_prediction(S: PrimeSet) -> int:
    """``e_2 = n - 1 - rank_{F_l}`` of the Rédei matrix."""
    return S.n - 1 - rank_mod_p(redei_matrix(S), S.l)


def t_s_matrix(table: ArithMilnorTable, d: int) -> ChainMatrix:
    if d < 1:
        raise ValueError("level must be positive")
    return build_linking_matrix(table.n, table.lookup, table.l, d)


@dataclass
class ClassGroupPrediction:
    l: int
    n: int
    e: Dict[int, int]
    valuations: Dict[int, List[int]]
    exponents: Optional[List[int]]
    stopped: str
    warnings: List[str]

    def describe(self) -> str:
        if self.exponents is None:
            return "undetermined"
        if not self.exponents:
            return "trivial"
        if self.l == 2:
            return " + ".join(f"Z/{2 ** a}" for a in self.exponents)
        return " + ".join(f"O/p^{a}" for a in self.exponents)

    def as_dict(self) -> dict:
        return {
            "l": self.l,
            "n": self.n,
            "e": {str(d): self.e[d] for d in sorted(self.e)},
            "elementary_divisor_valuations": {str(d): self.valuations[d] for d in sorted(self.valuations)},
            "invariant_exponents": self.exponents,
            "structure": self.describe(),
            "stopped": self.stopped,
            "warnings": list(self.warnings),
        }


def class_group_prediction(S: PrimeSet, d_max: int, table: Optional[ArithMilnorTable] = None) -> ClassGroupPrediction:
    """Ranks ``e_1, e_2, ...`` of the l-part of the class group predicted from
    the higher linking matrices of ``S``.

    Stops at the first ``d`` with ``e_d = 0`` (all later ranks vanish), at
    ``d_max``, or where a needed entry is unavailable.
    """
    if table is None:
        table = arith_milnor_table(S)
    n, l = S.n, S.l
    if d_max < 1:
        raise ValueError("d_max must be positive")
    report: Optional[RankReport] = None
    stopped = f"reached d_max = {d_max}"
    last = 0
    for d in range(1, d_max + 1):
        try:
            report = ranks_from_matrices(n, lambda k: t_s_matrix(table, k), l, d)
        except MissingMilnorError as exc:
            stopped = f"level {d} needs unavailable entries ({exc.args[0]})"
            break
        last = d
        if report.e[d] == 0:
            stopped = f"e_{d} = 0"
            break
    if report is None:
        raise MissingMilnorError("no level could be evaluated")
    e = {d: report.e[d] for d in range(1, last + 1)}
    vals = {d: report.valuations[d] for d in range(1, last + 1)}
    exps = RankReport(l, e, vals, []).invariant_exponents()
    return ClassGroupPrediction(l, n, e, vals, exps, stopped, list(report.warnings))
