"""Rédei's triple symbol ``[p1, p2, p3]`` for primes congruent to 1 mod 4.

Construction.  Let ``F = Q(sqrt p1)`` and ``w = (1 + sqrt p1)/2``.  Find
coprime ``(a, b)`` and ``c`` with ``a^2 = p1 b^2 + p2 c^2`` and put

* ``beta = (a + b sqrt p1)/2`` when ``a, b`` are both odd, otherwise
  ``beta = a + b sqrt p1``;
* accept the solution only when ``N(beta)`` is odd, ``p3`` does not divide
  ``c``, and ``beta`` or ``-beta`` is a square modulo ``4 O_F`` (that sign is
  kept).

Then ``F(sqrt beta, sqrt p2)`` is the dihedral octic field unramified
outside ``p1 p2``, and the symbol is the quadratic character of ``beta``
at a prime of ``F`` above ``p3``: ``legendre(a' + b' s, p3)`` where
``beta = a' + b' sqrt p1`` and ``s^2 = p1 mod p3``.

The independent check counts roots of ``X^4 - Tr(beta) X^2 + N(beta)``
modulo ``p3``; four roots (or two double roots when ``beta`` is congruent
to its conjugate) mean ``+1`` and none mean ``-1``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Optional, Tuple

from .symbols import PreconditionError, is_prime, legendre

DEFAULT_SEARCH_CAP = 4096


class SearchExhausted(RuntimeError):
    pass


def search_cap() -> int:
    raw = os.environ.get("ARITHTOP_SEARCH_CAP")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"ARITHTOP_SEARCH_CAP must be an integer, got {raw!r}") from None
    return DEFAULT_SEARCH_CAP


def sqrt_mod(a: int, p: int) -> int:
    """A square root of ``a`` modulo the odd prime ``p`` (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def _squares_mod4(p1: int) -> set:
    """Squares of ``O_F / 4`` written as ``(u, v)`` for ``u + v w``."""
    k = (p1 - 1) // 4  # w^2 = w + k
    out = set()
    for u in range(4):
        for v in range(4):
            # (u + v w)^2 = u^2 + 2uv w + v^2 (w + k)
            out.add(((u * u + v * v * k) % 4, (2 * u * v + v * v) % 4))
    return out


@dataclass(frozen=True)
class RedeiWitness:
    a: int
    b: int
    c: int
    # beta = (x + y sqrt p1) / z
    x: int
    y: int
    z: int

    @property
    def trace(self) -> Fraction:
        return Fraction(2 * self.x, self.z)

    def norm(self, p1: int) -> Fraction:
        return Fraction(self.x * self.x - p1 * self.y * self.y, self.z * self.z)


def _solutions(p1: int, p2: int, cap: int) -> Iterator[Tuple[int, int, int]]:
    """Solutions of ``a^2 = p1 b^2 + p2 c^2`` with ``a, c > 0``, ``b >= 0``,
    ``gcd(a, b) = 1``, in shells of growing ``max(b, c)``."""
    for rad in range(1, cap + 1):
        pairs = [(b, rad) for b in range(0, rad + 1)] + [(rad, c) for c in range(1, rad)]
        for b, c in pairs:
            t = p1 * b * b + p2 * c * c
            a = isqrt(t)
            if a * a == t and gcd(a, b) == 1:
                yield a, b, c


def _normalize(a: int, b: int, c: int, p1: int, p3: int, squares: set) -> Optional[RedeiWitness]:
    if c % p3 == 0:
        return None
    if a % 2 and b % 2:
        x, y, z = a, b, 2
    else:
        x, y, z = a, b, 1
    nrm = Fraction(x * x - p1 * y * y, z * z)
    if nrm.denominator != 1 or nrm.numerator % 2 == 0:
        return None
    for sign in (1, -1):
        sx, sy = sign * x, sign * y
        # (sx + sy sqrt p1)/z = (sx - sy)/z + (2 sy / z) w
        u, v = (sx - sy) // z, (2 * sy) // z
        if (u % 4, v % 4) in squares:
            return RedeiWitness(a, b, c, sx, sy, z)
    return None


def redei_witness(p1: int, p2: int, p3: int, cap: Optional[int] = None) -> RedeiWitness:
    """Search for a normalized solution, doubling the search radius from
    ``ceil(p1 p2 / 4)`` (capped) until one is found."""
    cap = search_cap() if cap is None else cap
    squares = _squares_mod4(p1)
    radius = min(cap, -(-p1 * p2 // 4))
    while True:
        for a, b, c in _solutions(p1, p2, radius):
            w = _normalize(a, b, c, p1, p3, squares)
            if w is not None:
                return w
        if radius >= cap:
            break
        radius = min(cap, 2 * radius)
    raise SearchExhausted(
        f"no normalized solution of a^2 = {p1} b^2 + {p2} c^2 with max(b, c) <= {cap}; "
        "raise ARITHTOP_SEARCH_CAP"
    )


def check_redei_preconditions(p1: int, p2: int, p3: int) -> None:
    ps = (p1, p2, p3)
    if len(set(ps)) != 3:
        raise PreconditionError("primes must be pairwise distinct")
    for p in ps:
        if not is_prime(p) or p % 4 != 1:
            raise PreconditionError(f"{p} is not a prime congruent to 1 mod 4")
    for i in range(3):
        for j in range(3):
            if i != j and legendre(ps[i], ps[j]) != 1:
                raise PreconditionError(f"({ps[i]}/{ps[j]}) = -1; the triple symbol is undefined")


def _symbol_from_witness(w: RedeiWitness, p1: int, p3: int) -> int:
    s = sqrt_mod(p1, p3)
    val = (w.x + w.y * s) * pow(w.z, -1, p3) % p3
    return legendre(val, p3)


def _symbol_by_quartic(w: RedeiWitness, p1: int, p3: int) -> int:
    tr = w.trace
    nm = w.norm(p1)
    tr_m = tr.numerator * pow(tr.denominator, -1, p3) % p3
    nm_m = nm.numerator * pow(nm.denominator, -1, p3) % p3
    roots = sum(1 for X in range(p3) if (X ** 4 - tr_m * X * X + nm_m) % p3 == 0)
    if roots == 4:
        return 1
    # beta = beta' mod p3 makes the quartic a square, with two double roots
    if roots == 2 and (tr_m * tr_m - 4 * nm_m) % p3 == 0:
        return 1
    if roots == 0:
        return -1
    raise ArithmeticError(f"quartic has {roots} roots modulo {p3}; splitting data inconsistent")


@dataclass(frozen=True)
class RedeiResult:
    symbol: int
    witness: RedeiWitness
    quartic_symbol: int


def redei_triple_detail(p1: int, p2: int, p3: int, cap: Optional[int] = None) -> RedeiResult:
    check_redei_preconditions(p1, p2, p3)
    w = redei_witness(p1, p2, p3, cap)
    a = _symbol_from_witness(w, p1, p3)
    b = _symbol_by_quartic(w, p1, p3)
    if a != b:
        raise ArithmeticError(f"triple symbol routes disagree for {(p1, p2, p3)}: {a} vs {b}")
    return RedeiResult(a, w, b)


def redei_triple(p1: int, p2: int, p3: int, cap: Optional[int] = None) -> int:
    return redei_triple_detail(p1, p2, p3, cap).symbol
