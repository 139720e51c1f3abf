"""Legendre and power residue symbols, mod-l linking numbers and the
Gauss-sum evaluation of the quadratic character."""

from __future__ import annotations

from functools import lru_cache
from typing import List


class PreconditionError(ValueError):
    """Input outside the arithmetic setting an operation is defined for."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> List[int]:
    """Prime factors of ``n`` with multiplicity, by trial division."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _require_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise PreconditionError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol via Euler's criterion."""
    _require_odd_prime(p)
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest positive primitive root modulo the prime ``p``."""
    if p == 2:
        return 1
    _require_odd_prime(p)
    qs = sorted(set(factorize(p - 1)))
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
        g += 1


def power_residue_index(a: int, p: int, m: int) -> int:
    """The exponent ``k`` in ``Z/m`` with ``(a/p)_m = zeta^k``.

    ``zeta = g^((p-1)/m)`` for the smallest primitive root ``g``; the index is
    the discrete logarithm of ``a^((p-1)/m)`` to the base ``zeta``.
    """
    if (p - 1) % m:
        raise PreconditionError(f"{p} is not congruent to 1 modulo {m}")
    if a % p == 0:
        raise PreconditionError(f"{a} is divisible by {p}")
    g = primitive_root(p)
    e = (p - 1) // m
    zeta = pow(g, e, p)
    target = pow(a, e, p)
    x = 1
    for k in range(m):
        if x == target:
            return k
        x = x * zeta % p
    raise ArithmeticError("power residue index not found")  # unreachable for prime p


def lk_l(p_i: int, p_j: int, l: int) -> int:
    """Mod-l linking number: index of ``p_j`` in the l-th power residue
    symbol at ``p_i``.  Not symmetric in general for ``l > 2``."""
    _require_odd_prime(p_i)
    _require_odd_prime(p_j)
    if p_i == p_j:
        raise PreconditionError("linking number needs two distinct primes")
    return power_residue_index(p_j, p_i, l)


def e_s(primes, l: int) -> int:
    """Largest ``e`` with every prime congruent to 1 modulo ``l^e``."""
    e = 0
    while all((p - 1) % (l ** (e + 1)) == 0 for p in primes):
        e += 1
        if e > 64:
            break
    return e


# --- Gauss sums over finite fields ------------------------------------------

def _cyclotomic_mulmod(a: List[int], b: List[int], p: int, q: int) -> List[int]:
    """Product in ``F_q[X] / (1 + X + ... + X^(p-1))``."""
    prod = [0] * (2 * p)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    # reduce mod X^p - 1 first, then mod Phi_p
    red = [0] * p
    for k, c in enumerate(prod):
        red[k % p] = (red[k % p] + c) % q
    top = red[p - 1]
    return [(c - top) % q for c in red[: p - 1]]


def gauss_sum_power(p: int, q: int) -> List[int]:
    """``(sum_{x in F_p} zeta^(x^2))^(q-1)`` as a polynomial in ``zeta``
    over ``F_q``, with ``zeta`` the class of ``X`` modulo the p-th
    cyclotomic polynomial."""
    _require_odd_prime(p)
    _require_odd_prime(q)
    if p == q:
        raise PreconditionError("p and q must be distinct")
    g = [0] * (p - 1)
    top = 0
    for x in range(p):
        k = x * x % p
        if k == p - 1:
            top += 1
        else:
            g[k] += 1
    g = [(c - top) % q for c in g]
    out = [1] + [0] * (p - 2)
    base = g
    e = q - 1
    while e:
        if e & 1:
            out = _cyclotomic_mulmod(out, base, p, q)
        base = _cyclotomic_mulmod(base, base, p, q)
        e >>= 1
    return out


def gauss_sum_symbol(p: int, q: int) -> int:
    """The sign ``g^(q-1)`` for the quadratic Gauss sum ``g`` of ``F_p``
    computed in characteristic ``q``.

    It always equals ``(q/p)``, which coincides with ``(p/q)`` when either
    prime is 1 mod 4.
    """
    val = gauss_sum_power(p, q)
    if any(val[1:]):
        raise ArithmeticError("Gauss sum power is not a constant; field construction degenerate")
    c = val[0] % q
    if c == 1:
        return 1
    if c == q - 1:
        return -1
    raise ArithmeticError(f"Gauss sum power {c} is not a sign")
