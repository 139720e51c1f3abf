"""The finite chain ring O/p^d with O = Z_l[zeta_l] and uniformizer pi = zeta - 1.

Elements are stored as ``d`` pi-adic digits in ``{0..l-1}``.  Arithmetic
goes through integer polynomials in ``x = pi`` reduced modulo the monic
polynomial ``Phi_l(1 + x)``; digits are then re-extracted.  For ``l = 2`` we
have ``pi = -2`` and the ring is ``Z/2^d``, with digits in base ``-2``.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, List, Sequence, Tuple

Poly = List[int]


@lru_cache(maxsize=None)
def _phi_shift(l: int) -> Tuple[int, ...]:
    """Coefficients (low to high) of ``Phi_l(1 + x) = ((1+x)^l - 1) / x``."""
    return tuple(comb(l, k + 1) for k in range(l))


@lru_cache(maxsize=None)
def _g_poly(l: int) -> Tuple[int, ...]:
    """``(Phi_l(1+x) - l) / x``, so that ``l = -x * g(x)`` in the ring."""
    return _phi_shift(l)[1:]


def _reduce_poly(a: Sequence[int], l: int) -> Poly:
    """Remainder of ``a`` modulo the monic ``Phi_l(1 + x)`` (degree ``l - 1``)."""
    phi = _phi_shift(l)
    deg = l - 1
    a = list(a)
    for top in range(len(a) - 1, deg - 1, -1):
        c = a[top]
        if c:
            shift = top - deg
            for k in range(deg + 1):
                a[shift + k] -= c * phi[k]
    a = a[:deg] if deg > 0 else []
    return a + [0] * (deg - len(a))


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _precision(l: int, d: int) -> int:
    return -(-d // (l - 1)) + 1


def _digits_from_poly(a: Sequence[int], l: int, d: int) -> Tuple[int, ...]:
    """pi-adic digits of the ring element represented by ``a``."""
    g = _g_poly(l)
    deg = l - 1
    cur = _reduce_poly(a, l)
    digits = []
    for _ in range(d):
        a0 = cur[0] if cur else 0
        c = a0 % l
        digits.append(c)
        b = (a0 - c) // l
        # (cur - c) / x, using l = -x g(x)
        nxt = list(cur[1:]) + [0]
        for k in range(len(g)):
            nxt[k] -= b * g[k]
        cur = nxt[:deg]
    return tuple(digits)


class ChainRingElt:
    """Element of ``O/p^d`` given by its pi-adic digits."""

    __slots__ = ("l", "d", "digits")

    def __init__(self, l: int, d: int, digits: Sequence[int]):
        if l < 2 or d < 1:
            raise ValueError("need prime l >= 2 and d >= 1")
        digits = tuple(digits)
        if len(digits) != d or any(not 0 <= c < l for c in digits):
            raise ValueError(f"expected {d} digits in 0..{l - 1}, got {digits}")
        self.l = l
        self.d = d
        self.digits = digits

    @classmethod
    def from_poly(cls, l: int, d: int, coeffs: Sequence[int]) -> "ChainRingElt":
        """Element ``sum coeffs[k] * pi^k`` for arbitrary integer ``coeffs``."""
        return cls(l, d, _digits_from_poly(coeffs, l, d))

    @classmethod
    def from_int(cls, l: int, d: int, n: int) -> "ChainRingElt":
        return cls.from_poly(l, d, [n])

    @classmethod
    def zero(cls, l: int, d: int) -> "ChainRingElt":
        return cls(l, d, (0,) * d)

    @classmethod
    def one(cls, l: int, d: int) -> "ChainRingElt":
        return cls.from_int(l, d, 1)

    @classmethod
    def pi_power(cls, l: int, d: int, k: int) -> "ChainRingElt":
        digits = [0] * d
        if k < d:
            digits[k] = 1
        return cls(l, d, digits)

    def to_int(self) -> int:
        """Residue modulo ``2^d``; only defined for ``l = 2``."""
        if self.l != 2:
            raise ValueError("integer residues only exist for l = 2")
        return sum(c * (-2) ** k for k, c in enumerate(self.digits)) % (2 ** self.d)

    def _poly(self) -> Poly:
        return list(self.digits)

    def _check(self, other: "ChainRingElt") -> None:
        if (self.l, self.d) != (other.l, other.d):
            raise ValueError(f"mismatched rings O/p^{self.d} (l={self.l}) and O/p^{other.d} (l={other.l})")

    def __repr__(self) -> str:
        if self.l == 2:
            return f"ChainRingElt(l=2, d={self.d}, {self.to_int()} mod {2 ** self.d})"
        return f"ChainRingElt(l={self.l}, d={self.d}, digits={self.digits})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ChainRingElt) and (self.l, self.d, self.digits) == (other.l, other.d, other.digits)

    def __hash__(self) -> int:
        return hash((self.l, self.d, self.digits))

    def __add__(self, other: "ChainRingElt") -> "ChainRingElt":
        self._check(other)
        return ChainRingElt.from_poly(self.l, self.d, [a + b for a, b in zip(self.digits, other.digits)])

    def __neg__(self) -> "ChainRingElt":
        return ChainRingElt.from_poly(self.l, self.d, [-a for a in self.digits])

    def __sub__(self, other: "ChainRingElt") -> "ChainRingElt":
        self._check(other)
        return ChainRingElt.from_poly(self.l, self.d, [a - b for a, b in zip(self.digits, other.digits)])

    def __mul__(self, other: "ChainRingElt") -> "ChainRingElt":
        self._check(other)
        mod = self.l ** _precision(self.l, self.d)
        a = _reduce_poly(self.digits, self.l)
        b = _reduce_poly(other.digits, self.l)
        prod = [c % mod for c in _reduce_poly(_poly_mul(a, b), self.l)]
        return ChainRingElt.from_poly(self.l, self.d, prod)

    def __pow__(self, k: int) -> "ChainRingElt":
        if k < 0:
            return self.inverse() ** (-k)
        out = ChainRingElt.one(self.l, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.digits)

    def valuation(self) -> int:
        """pi-adic valuation; the zero element has valuation ``d``."""
        for k, c in enumerate(self.digits):
            if c:
                return k
        return self.d

    def is_unit(self) -> bool:
        return self.digits[0] != 0

    def inverse(self) -> "ChainRingElt":
        if not self.is_unit():
            raise ZeroDivisionError("element is not a unit")
        order = self.l ** self.d - self.l ** (self.d - 1)
        return self ** (order - 1)

    def shift_down(self, k: int) -> "ChainRingElt":
        """An element ``q`` with ``pi^k * q = self``; needs ``valuation >= k``."""
        if self.valuation() < k:
            raise ValueError("element not divisible by pi^k")
        return ChainRingElt(self.l, self.d, self.digits[k:] + (0,) * k)

    def divide_by(self, p: "ChainRingElt") -> "ChainRingElt":
        """Some ``q`` with ``q * p = self``; requires ``val(p) <= val(self)``."""
        v = p.valuation()
        if v >= self.d:
            if self.is_zero():
                return ChainRingElt.zero(self.l, self.d)
            raise ZeroDivisionError("division by zero")
        unit = p.shift_down(v)
        return self.shift_down(v) * unit.inverse()


class ChainMatrix:
    """Dense matrix over ``O/p^d``."""

    def __init__(self, l: int, d: int, rows: Sequence[Sequence[ChainRingElt]]):
        self.l = l
        self.d = d
        self.rows: List[List[ChainRingElt]] = [list(r) for r in rows]
        width = {len(r) for r in self.rows}
        if len(width) > 1:
            raise ValueError("ragged matrix")
        for r in self.rows:
            for x in r:
                if (x.l, x.d) != (l, d):
                    raise ValueError("entries from different chain rings")

    @classmethod
    def from_ints(cls, l: int, d: int, rows: Sequence[Sequence[int]]) -> "ChainMatrix":
        return cls(l, d, [[ChainRingElt.from_int(l, d, x) for x in r] for r in rows])

    @classmethod
    def identity(cls, l: int, d: int, n: int) -> "ChainMatrix":
        return cls.from_ints(l, d, [[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij: Tuple[int, int]) -> ChainRingElt:
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ChainMatrix) and (self.l, self.d) == (other.l, other.d) and self.rows == other.rows

    def __matmul__(self, other: "ChainMatrix") -> "ChainMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        zero = ChainRingElt.zero(self.l, self.d)
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = zero
                for t in range(k):
                    acc = acc + self.rows[i][t] * other.rows[t][j]
                row.append(acc)
            out.append(row)
        return ChainMatrix(self.l, self.d, out)

    def to_ints(self) -> List[List[int]]:
        return [[x.to_int() for x in r] for r in self.rows]

    def to_digit_rows(self) -> List[List[Tuple[int, ...]]]:
        return [[x.digits for x in r] for r in self.rows]

    def mod_pi(self) -> List[List[int]]:
        """Reduction to the residue field ``F_l``."""
        return [[x.digits[0] for x in r] for r in self.rows]


def snf(M: ChainMatrix) -> List[int]:
    """Elementary divisors of ``M`` as pi-valuations ``v_1 <= v_2 <= ...``.

    The list has ``min(rows, cols)`` entries; the value ``d`` stands for the
    zero divisor.  Pivots are the first entry of minimal valuation in
    row-major order.
    """
    d = M.d
    A = [list(r) for r in M.rows]
    n, m = M.shape
    out: List[int] = []
    for k in range(min(n, m)):
        best = None
        for i in range(k, n):
            for j in range(k, m):
                v = A[i][j].valuation()
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None or best[0] >= d:
            out.extend([d] * (min(n, m) - k))
            break
        v, pi_, pj = best
        A[k], A[pi_] = A[pi_], A[k]
        for row in A:
            row[k], row[pj] = row[pj], row[k]
        p = A[k][k]
        for i in range(k + 1, n):
            if not A[i][k].is_zero():
                f = A[i][k].divide_by(p)
                A[i] = [A[i][j] - f * A[k][j] if j >= k else A[i][j] for j in range(m)]
        for j in range(k + 1, m):
            if not A[k][j].is_zero():
                f = A[k][j].divide_by(p)
                for i in range(k, n):
                    A[i][j] = A[i][j] - f * A[i][k]
        out.append(v)
    return out


def e_d_from_divisors(valuations: Iterable[int], d: int) -> int:
    """Number of elementary divisors lying in ``p^d``, minus one."""
    return sum(1 for v in valuations if v >= d) - 1


def valuations_from_ints(values: Iterable[int], l: int = 2) -> List[int]:
    """l-adic valuations of integers, with 0 mapped to a large sentinel."""
    out = []
    for x in values:
        if x == 0:
            out.append(10 ** 9)
            continue
        v = 0
        while x % l == 0:
            x //= l
            v += 1
        out.append(v)
    return out


def zeta_rank_inversion(f: Sequence[int], D: int) -> List[int]:
    """Exponents ``a_1..a_D`` with ``prod_k (1 - t^k)^{a_k} = f(t) mod t^{D+1}``.

    ``f`` is given by its coefficients, constant term first, and must start
    with 1.
    """
    if not f or f[0] != 1:
        raise ValueError("f(0) must equal 1")
    target = list(f[: D + 1]) + [0] * max(0, D + 1 - len(f))
    P = [1] + [0] * D
    out = []
    for k in range(1, D + 1):
        a = P[k] - target[k]
        out.append(a)
        if a:
            factor = [0] * (D + 1)
            for s in range(D // k + 1):
                factor[s * k] = gen_binomial_signed(a, s)
            P = _truncated_mul(P, factor, D)
    return out


def gen_binomial_signed(a: int, s: int) -> int:
    """Coefficient of ``u^s`` in ``(1 - u)^a`` for any integer ``a``."""
    num = 1
    for k in range(s):
        num *= a - k
    den = 1
    for k in range(2, s + 1):
        den *= k
    return (-1) ** s * (num // den)


def expand_rank_product(a: Sequence[int], D: int) -> List[int]:
    """Coefficients of ``prod_k (1 - t^k)^{a_k}`` up to ``t^D``."""
    P = [1] + [0] * D
    for k, ak in enumerate(a, start=1):
        if k > D or not ak:
            continue
        factor = [0] * (D + 1)
        for s in range(D // k + 1):
            factor[s * k] = gen_binomial_signed(ak, s)
        P = _truncated_mul(P, factor, D)
    return P


def _truncated_mul(a: Sequence[int], b: Sequence[int], D: int) -> List[int]:
    out = [0] * (D + 1)
    for i, x in enumerate(a[: D + 1]):
        if x:
            for j, y in enumerate(b[: D + 1 - i]):
                out[i + j] += x * y
    return out


def poly_from_factors(factors: Sequence[Sequence[int]]) -> List[int]:
    """Multiply integer polynomials given low-to-high."""
    out = [1]
    for f in factors:
        out = _poly_mul(out, list(f))
    return out
