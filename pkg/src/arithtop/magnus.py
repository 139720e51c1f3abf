"""Magnus expansion, Fox free derivatives and Milnor numbers.

The Magnus map sends ``x_i`` to ``1 + X_i`` in the ring of noncommutative
power series, truncated above a fixed degree.  Milnor numbers of a link are
read off as coefficients of the expanded longitudes; :class:`MilnorTable`
holds them together with their indeterminacy ``delta`` and reduced value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, gcd
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .words import FreeWord, GroupRingElt, RankError

Monomial = Tuple[int, ...]
MultiIndex = Tuple[int, ...]


def gen_binomial(e: int, t: int) -> int:
    """Binomial coefficient ``C(e, t)`` for any integer ``e`` and ``t >= 0``."""
    if t < 0:
        return 0
    num = 1
    for k in range(t):
        num *= e - k
    den = 1
    for k in range(2, t + 1):
        den *= k
    return num // den


class NCSeries:
    """Truncated noncommutative power series in ``X_1..X_n``.

    Monomials are tuples of generator indices; the empty tuple is the
    constant term.  With ``modulus > 0`` coefficients live in ``Z/modulus``
    and are stored as representatives in ``[0, modulus)``.
    """

    __slots__ = ("n", "D", "modulus", "coeffs")

    def __init__(self, n: int, D: int, coeffs: Mapping[Monomial, int] | None = None, modulus: int = 0):
        if D < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.n = n
        self.D = D
        self.modulus = modulus
        clean: Dict[Monomial, int] = {}
        for mono, c in (coeffs or {}).items():
            if len(mono) > D:
                continue
            if modulus:
                c %= modulus
            if c:
                clean[tuple(mono)] = c
        self.coeffs = clean

    @classmethod
    def one(cls, n: int, D: int, modulus: int = 0) -> "NCSeries":
        return cls(n, D, {(): 1}, modulus)

    @classmethod
    def power_of_generator(cls, n: int, D: int, i: int, e: int, modulus: int = 0) -> "NCSeries":
        """``(1 + X_i)^e`` truncated; negative ``e`` gives the geometric series."""
        return cls(n, D, {(i,) * t: gen_binomial(e, t) for t in range(D + 1)}, modulus)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "NCSeries(0)"
        parts = []
        for mono in sorted(self.coeffs, key=lambda m: (len(m), m)):
            name = "".join(f"X{i}" for i in mono) or "1"
            parts.append(f"{self.coeffs[mono]}*{name}")
        return "NCSeries(" + " + ".join(parts) + ")"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, NCSeries)
            and self.n == other.n
            and self.D == other.D
            and self.modulus == other.modulus
            and self.coeffs == other.coeffs
        )

    def coeff(self, mono: Sequence[int]) -> int:
        return self.coeffs.get(tuple(mono), 0)

    def _compatible(self, other: "NCSeries") -> None:
        if (self.n, self.D, self.modulus) != (other.n, other.D, other.modulus):
            raise ValueError("series have different rank, degree or modulus")

    def __add__(self, other: "NCSeries") -> "NCSeries":
        self._compatible(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return NCSeries(self.n, self.D, out, self.modulus)

    def __mul__(self, other: "NCSeries") -> "NCSeries":
        self._compatible(other)
        out: Dict[Monomial, int] = {}
        D = self.D
        for m1, c1 in self.coeffs.items():
            room = D - len(m1)
            for m2, c2 in other.coeffs.items():
                if len(m2) <= room:
                    key = m1 + m2
                    out[key] = out.get(key, 0) + c1 * c2
        return NCSeries(self.n, D, out, self.modulus)

    def mul_generator_power(self, i: int, e: int) -> "NCSeries":
        """Right multiplication by ``(1 + X_i)^e``, avoiding a full product."""
        D = self.D
        factors = [gen_binomial(e, t) for t in range(D + 1)]
        out: Dict[Monomial, int] = {}
        for m, c in self.coeffs.items():
            for t in range(D - len(m) + 1):
                f = factors[t]
                if f:
                    key = m + (i,) * t
                    out[key] = out.get(key, 0) + c * f
        return NCSeries(self.n, D, out, self.modulus)

    def degree_part(self, r: int) -> Dict[Monomial, int]:
        return {m: c for m, c in self.coeffs.items() if len(m) == r}


def magnus_expand(w: FreeWord, D: int, modulus: int = 0) -> NCSeries:
    """Image of ``w`` under ``x_i -> 1 + X_i``, truncated above degree ``D``."""
    if D < 1:
        raise ValueError("degree must be at least 1")
    n = w.group.rank
    s = NCSeries.one(n, D, modulus)
    for i, e in w.runs():
        s = s.mul_generator_power(i, e)
    return s


def fox_derive(e: GroupRingElt, i: int) -> GroupRingElt:
    """Fox derivative ``d e / d x_i`` in the integral group ring."""
    group = e.group
    out: Dict[FreeWord, int] = {}
    for w, c in e.terms.items():
        letters = w.letters
        for k, a in enumerate(letters):
            if a == i:
                pre = FreeWord(group, letters[:k])
                out[pre] = out.get(pre, 0) + c
            elif a == -i:
                pre = FreeWord(group, letters[: k + 1])
                out[pre] = out.get(pre, 0) - c
    return GroupRingElt(group, out)


def fox_derive_word(w: FreeWord, i: int) -> GroupRingElt:
    return fox_derive(GroupRingElt.from_word(w), i)


def higher_fox(w: FreeWord | GroupRingElt, I: Sequence[int]) -> GroupRingElt:
    """``d^r w / dx_{i_1} ... dx_{i_r}``; the derivative in ``x_{i_r}`` is taken first."""
    e = GroupRingElt.from_word(w) if isinstance(w, FreeWord) else w
    for i in reversed(tuple(I)):
        e = fox_derive(e, i)
        if e.is_zero():
            break
    return e


def higher_fox_eps(w: FreeWord, I: Sequence[int]) -> int:
    """Augmentation of the iterated Fox derivative of ``w`` along ``I``."""
    if not I:
        return 1
    for i in I:
        if i < 1 or i > w.group.rank:
            raise IndexError(f"index {i} out of range for {w.group}")
    return higher_fox(w, I).augmentation()


def multi_indices(n: int, r: int) -> Iterator[MultiIndex]:
    return itertools.product(range(1, n + 1), repeat=r)


def proper_subsequences(I: Sequence[int]) -> List[MultiIndex]:
    """Order-preserving subsequences of length between 2 and ``len(I) - 1``.

    Position subsets are enumerated, so equal subsequences may repeat; the
    result is deduplicated.
    """
    I = tuple(I)
    out = set()
    for k in range(2, len(I)):
        for pos in itertools.combinations(range(len(I)), k):
            out.add(tuple(I[p] for p in pos))
    return sorted(out)


def cyclic_rotations(I: Sequence[int]) -> List[MultiIndex]:
    I = tuple(I)
    return [I[k:] + I[:k] for k in range(len(I))]


def indeterminacy_indices(I: Sequence[int]) -> List[MultiIndex]:
    """All cyclic permutations of proper subsequences of ``I``."""
    out = set()
    for J in proper_subsequences(I):
        out.update(cyclic_rotations(J))
    return sorted(out)


@dataclass(frozen=True)
class MilnorEntry:
    mu: int
    delta: Optional[int]
    mubar: Optional[int]
    provenance: str = "computed"


class MilnorTable:
    """Milnor numbers ``mu(I)``, their indeterminacy ``delta(I)`` and
    reduced values ``mubar(I)``.

    ``delta`` is the nonnegative generator of the indeterminacy ideal.  In
    the modular variant (``modulus = m``) it is a divisor of ``m``, and
    ``delta == m`` means the zero ideal of ``Z/m``.  Entries whose
    indeterminacy depends on a missing value carry ``delta = None``.
    """

    def __init__(self, n: int, D: int, entries: Mapping[MultiIndex, MilnorEntry], modulus: int = 0,
                 binomial_gcd: Mapping[int, int] | None = None):
        self.n = n
        self.D = D
        self.modulus = modulus
        self.entries: Dict[MultiIndex, MilnorEntry] = dict(entries)
        self.binomial_gcd = dict(binomial_gcd or {})

    @classmethod
    def from_mu(
        cls,
        n: int,
        D: int,
        mu: Mapping[MultiIndex, int],
        modulus: int = 0,
        l_power: Optional[int] = None,
        provenance: Mapping[MultiIndex, str] | None = None,
    ) -> "MilnorTable":
        """Build a table from raw ``mu`` values.

        ``l_power`` is ``l^{e_S}``; when given, the indeterminacy of ``I`` also
        contains the binomial coefficients ``C(l^{e_S}, t)`` for ``1 <= t <= |I|``.
        """
        if D < 2:
            raise ValueError("Milnor tables need degree at least 2")
        mu = {tuple(k): (v % modulus if modulus else v) for k, v in mu.items()}
        provenance = dict(provenance or {})
        binom: Dict[int, int] = {}
        if l_power is not None:
            g = 0
            for r in range(1, D + 1):
                g = gcd(g, comb(l_power, r))
                binom[r] = g
        entries: Dict[MultiIndex, MilnorEntry] = {}
        for I, val in mu.items():
            g = binom.get(len(I), 0)
            known = True
            for J in indeterminacy_indices(I):
                if J not in mu:
                    known = False
                    break
                g = gcd(g, mu[J])
            if not known:
                entries[I] = MilnorEntry(val, None, None, provenance.get(I, "computed"))
                continue
            if modulus:
                g = gcd(g, modulus)
                delta = g
                mubar = val % delta
            else:
                delta = g
                mubar = val % delta if delta else val
            entries[I] = MilnorEntry(val, delta, mubar, provenance.get(I, "computed"))
        return cls(n, D, entries, modulus, binom)

    def __contains__(self, I: Sequence[int]) -> bool:
        return tuple(I) in self.entries

    def __getitem__(self, I: Sequence[int]) -> MilnorEntry:
        return self.entries[tuple(I)]

    def mu(self, I: Sequence[int]) -> int:
        return self.entries[tuple(I)].mu

    def delta(self, I: Sequence[int]) -> Optional[int]:
        return self.entries[tuple(I)].delta

    def mubar(self, I: Sequence[int]) -> Optional[int]:
        return self.entries[tuple(I)].mubar

    def indices(self, r: Optional[int] = None) -> List[MultiIndex]:
        keys = self.entries if r is None else [I for I in self.entries if len(I) == r]
        return sorted(keys, key=lambda I: (len(I), I))

    def signed_mubar(self, I: Sequence[int]) -> Optional[int]:
        """``mubar`` shifted into ``(-delta/2, delta/2]`` for display."""
        e = self.entries[tuple(I)]
        if e.mubar is None or not e.delta:
            return e.mubar
        v = e.mubar
        return v - e.delta if 2 * v > e.delta else v

    def to_rows(self) -> List[dict]:
        rows = []
        for I in self.indices():
            e = self.entries[I]
            rows.append({
                "index": " ".join(map(str, I)),
                "mu": e.mu,
                "delta": e.delta,
                "mubar": e.mubar,
                "provenance": e.provenance,
            })
        return rows


def longitude_mu(longitudes: Sequence[FreeWord], D: int, modulus: int = 0) -> Dict[MultiIndex, int]:
    """Raw ``mu(i_1..i_r j)`` for ``r + 1 <= D`` from longitude words."""
    if not longitudes:
        raise ValueError("need at least one longitude")
    group = longitudes[0].group
    for y in longitudes:
        if y.group != group:
            raise RankError("longitudes live in different free groups")
    n = group.rank
    if len(longitudes) != n:
        raise ValueError(f"expected {n} longitudes, got {len(longitudes)}")
    mu: Dict[MultiIndex, int] = {}
    for j, y in enumerate(longitudes, start=1):
        s = magnus_expand(y, D - 1, modulus)
        for r in range(1, D):
            for I in multi_indices(n, r):
                mu[I + (j,)] = s.coeff(I)
    return mu


def milnor_table(longitudes: Sequence[FreeWord], D: int, modulus: int = 0,
                 l_power: Optional[int] = None) -> MilnorTable:
    """Milnor table of all ``I`` with ``2 <= |I| <= D``."""
    if D < 2:
        raise ValueError("degree must be at least 2")
    mu = longitude_mu(longitudes, D, modulus)
    return MilnorTable.from_mu(longitudes[0].group.rank, D, mu, modulus, l_power)


@dataclass
class Violation:
    kind: str
    indices: Tuple[MultiIndex, ...]
    detail: str


def _reduce(v: int, g: int) -> int:
    return v % g if g else v


def shuffles(I: Sequence[int], J: Sequence[int]) -> Iterator[MultiIndex]:
    """All shuffles of ``I`` and ``J``, with multiplicity."""
    I, J = tuple(I), tuple(J)
    total = len(I) + len(J)
    for pos in itertools.combinations(range(total), len(I)):
        chosen = set(pos)
        it_i, it_j = iter(I), iter(J)
        yield tuple(next(it_i) if k in chosen else next(it_j) for k in range(total))


def check_symmetries(table: MilnorTable, cyclic: bool = True,
                     max_length: Optional[int] = None) -> List[Violation]:
    """Cyclic symmetry and shuffle relations among the reduced invariants.

    ``cyclic=False`` checks shuffles only, and ``max_length`` bounds the
    length of the shuffled indices ``Hk``.  Entries with unknown
    indeterminacy are skipped.  Returns the list of violations; an empty
    list means every relation holds.
    """
    m = table.modulus
    out: List[Violation] = []

    def ideal(g: int) -> int:
        return gcd(g, m) if m else g

    for I in (table.indices() if cyclic else []):
        e = table.entries[I]
        if e.delta is None:
            continue
        for R in cyclic_rotations(I)[1:]:
            if R not in table.entries:
                continue
            f = table.entries[R]
            if f.delta is None:
                continue
            g = ideal(gcd(e.delta, f.delta))
            if _reduce(e.mu - f.mu, g) != 0:
                out.append(Violation("cyclic", (I, R), f"mu={e.mu} vs {f.mu} mod {g}"))

    n = table.n
    top = table.D if max_length is None else min(table.D, max_length)
    for total in range(2, top):
        for s in range(1, total):
            t = total - s
            for I in multi_indices(n, s):
                for J in multi_indices(n, t):
                    if I > J and s == t:
                        continue
                    for k in range(1, n + 1):
                        hs = [H + (k,) for H in shuffles(I, J)]
                        if any(H not in table.entries or table.entries[H].delta is None for H in hs):
                            continue
                        g = 0
                        acc = 0
                        for H in hs:
                            g = gcd(g, table.entries[H].delta)
                            acc += table.entries[H].mu
                        g = ideal(g)
                        if _reduce(acc, g) != 0:
                            out.append(Violation("shuffle", (I, J, (k,)), f"sum={acc} mod {g}"))
    return out
