"""Laurent polynomials over Z in one variable ``t``, with the gcd and
resultant routines needed for Alexander polynomials."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Mapping, Sequence


class LaurentPoly:
    """Finite sum ``sum c_k t^k`` with integer ``c_k`` and ``k`` in Z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs: Dict[int, int] = {k: c for k, c in (coeffs or {}).items() if c}

    @classmethod
    def from_list(cls, coeffs: Sequence[int], shift: int = 0) -> "LaurentPoly":
        """Coefficients listed from the lowest exponent ``shift`` upward."""
        return cls({k + shift: c for k, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def min_exp(self) -> int:
        return min(self.coeffs)

    def max_exp(self) -> int:
        return max(self.coeffs)

    def span(self) -> int:
        """Difference between the highest and lowest exponent."""
        return self.max_exp() - self.min_exp() if self.coeffs else 0

    def to_list(self) -> List[int]:
        """Coefficients from the lowest exponent to the highest."""
        if not self.coeffs:
            return []
        lo, hi = self.min_exp(), self.max_exp()
        return [self.coeffs.get(k, 0) for k in range(lo, hi + 1)]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({k: c * other for k, c in self.coeffs.items()})
        out: Dict[int, int] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def evaluate(self, t):
        return sum(c * t ** k for k, c in self.coeffs.items())

    def normalize(self) -> "LaurentPoly":
        """Unit normal form: lowest exponent 0 and positive leading coefficient."""
        if not self.coeffs:
            return self
        p = self.shift(-self.min_exp())
        if p.coeffs[p.max_exp()] < 0:
            p = -p
        return p

    def __repr__(self) -> str:
        return f"LaurentPoly({format_laurent(self)!r})"

    def __str__(self) -> str:
        return format_laurent(self)


def format_laurent(p: LaurentPoly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in sorted(p.coeffs, reverse=True):
        c = p.coeffs[k]
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            pw = var if k == 1 else f"{var}^{k}"
            body = pw if mag == 1 else f"{mag}*{pw}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# --- dense integer polynomials, low-to-high coefficient lists -------------

def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def primitive_part(a: Sequence[int]) -> List[int]:
    a = _trim(list(a))
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def pseudo_remainder(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """A remainder of ``lc(b)^k * a`` modulo ``b`` computed over Z."""
    r = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    db = len(b) - 1
    lc = b[-1]
    while r and len(r) - 1 >= db:
        top = r[-1]
        shift = len(r) - 1 - db
        r = [lc * c for c in r]
        for k in range(db + 1):
            r[shift + k] -= top * b[k]
        _trim(r)
    return r


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Gcd in Z[t] via the primitive polynomial remainder sequence.

    The result has positive leading coefficient.
    """
    a = _trim(list(a))
    b = _trim(list(b))
    if not a:
        return primitive_part(b) if b else []
    if not b:
        return [x * (1 if a[-1] > 0 else -1) for x in a]
    c = gcd(content(a), content(b))
    a, b = primitive_part(a), primitive_part(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_remainder(a, b)
        a, b = b, primitive_part(r)
    return [c * x for x in primitive_part(a)]


def exact_div(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Quotient ``a / b`` in Z[t]; raises if the division is not exact."""
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    q = [0] * max(0, len(a) - len(b) + 1)
    r = a[:]
    lc = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        top = r[shift + len(b) - 1]
        if top % lc:
            raise ArithmeticError("inexact polynomial division")
        coef = top // lc
        q[shift] = coef
        if coef:
            for k in range(len(b)):
                r[shift + k] -= coef * b[k]
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_sub(a: Sequence[int], b: Sequence[int]) -> List[int]:
    n = max(len(a), len(b))
    return _trim([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)])


def bareiss_det(M: Sequence[Sequence[Sequence[int]]]) -> List[int]:
    """Determinant of a square matrix over Z[t] by fraction-free elimination."""
    n = len(M)
    if n == 0:
        return [1]
    A = [[_trim(list(x)) for x in row] for row in M]
    sign = 1
    prev: List[int] = [1]
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return []
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_sub(poly_mul(A[k][k], A[i][j]), poly_mul(A[i][k], A[k][j]))
                A[i][j] = exact_div(num, prev)
            A[i][k] = []
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return [sign * c for c in det]


def resultant(a: Sequence[int], b: Sequence[int]) -> int:
    """Resultant of two integer polynomials, by Euclid's algorithm over Q."""
    A = [Fraction(c) for c in _trim(list(a))]
    B = [Fraction(c) for c in _trim(list(b))]
    if not A or not B:
        return 0
    out = Fraction(1)
    while True:
        m, n = len(A) - 1, len(B) - 1
        if n == 0:
            out *= B[0] ** m
            break
        if m == 0:
            out *= A[0] ** n
            break
        # res(A, B) = (-1)^{mn} lc(B)^{m - deg R} res(B, R) with R = A mod B
        R = A[:]
        lc = B[-1]
        for shift in range(m - n, -1, -1):
            coef = R[shift + n] / lc
            if coef:
                for k in range(n + 1):
                    R[shift + k] -= coef * B[k]
        while R and R[-1] == 0:
            R.pop()
        if not R:
            return 0
        dr = len(R) - 1
        out *= (-1) ** (m * n) * lc ** (m - dr)
        A, B = B, R
    if out.denominator != 1:
        raise ArithmeticError("non-integral resultant")
    return int(out)
