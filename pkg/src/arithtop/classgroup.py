"""Narrow class groups of quadratic fields from binary quadratic forms.

Proper equivalence classes of primitive forms of discriminant ``D`` are the
narrow ideal classes.  For ``D < 0`` classes are reduced positive definite
forms; for ``D > 0`` they are cycles of reduced indefinite forms under the
reduction step.  Composition uses united forms; the group structure comes
from a relation lattice and Smith normal form over Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .primeinv.prediction import ClassGroupPrediction, PrimeSet, class_group_prediction
from .primeinv.symbols import factorize

DISC_BOUND = 10 ** 7


class DiscriminantError(ValueError):
    pass


def is_fundamental(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n: int) -> bool:
    fs = factorize(n)
    return len(fs) == len(set(fs))


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """``(g, x, y)`` with ``a x + b y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class QuadForm:
    """Binary quadratic form ``a x^2 + b xy + c y^2``."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a: int, b: int, c: int):
        self.a, self.b, self.c = a, b, c

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def key(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadForm) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"QuadForm{self.key()}"

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def opposite(self) -> "QuadForm":
        return QuadForm(self.a, -self.b, self.c)

    def evaluate(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    @classmethod
    def principal(cls, D: int) -> "QuadForm":
        b = D % 2
        return cls(1, b, (b * b - D) // 4)


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Dirichlet composition through a united pair; the result is not reduced."""
    D = f.disc
    if g.disc != D:
        raise ValueError("forms of different discriminants")
    a1, b1 = f.a, f.b
    a2, b2 = g.a, g.b
    s = (b1 + b2) // 2
    g1, u1, v1 = _xgcd(a1, a2)
    e, x, w = _xgcd(g1, s)
    u, v = u1 * x, v1 * x
    # e = u a1 + v a2 + w s
    a3 = a1 * a2 // (e * e)
    b3 = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + D) // 2) // e
    m = 2 * abs(a3)
    b3 %= m
    c3 = (b3 * b3 - D) // (4 * a3)
    return QuadForm(a3, b3, c3)


# --- definite forms ---------------------------------------------------------

def reduce_definite(f: QuadForm) -> QuadForm:
    a, b, c = f.key()
    if a <= 0:
        raise ValueError("only positive definite forms are handled")
    while True:
        if b > a or b <= -a:
            # translate b into (-a, a]
            k = (a - b) // (2 * a)
            b2 = b + 2 * a * k
            c = (b2 * b2 - (b * b - 4 * a * c)) // (4 * a)
            b = b2
            continue
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)


def reduced_definite_forms(D: int) -> List[QuadForm]:
    out = []
    amax = isqrt(-D // 3) + 1
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            f = QuadForm(a, b, c)
            if f.is_primitive():
                out.append(f)
    return out


# --- indefinite forms -------------------------------------------------------

class _Indefinite:
    def __init__(self, D: int):
        self.D = D
        self.r = isqrt(D)  # floor sqrt, D is never a square here

    def is_reduced(self, f: QuadForm) -> bool:
        # 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b, integer form
        a, b = abs(f.a), f.b
        if not 0 < b <= self.r:
            return False
        lo = self.r - b  # sqrt D - b > lo, so 2a > sqrt D - b  <=>  2a > lo
        return 2 * a > lo and 2 * a <= self.r + b

    def rho(self, f: QuadForm) -> QuadForm:
        """One reduction step ``(a, b, c) -> (c, b', a')``, ``b' = -b mod 2c``."""
        a, b, c = f.key()
        m = 2 * abs(c)
        if abs(c) <= self.r:
            # largest b' < sqrt D with b' = -b mod 2|c|
            t = (self.r + b) % m
            b2 = self.r - t
        else:
            # -|c| < b' <= |c|
            b2 = (-b) % m
            if b2 > abs(c):
                b2 -= m
        a2 = (b2 * b2 - self.D) // (4 * c)
        return QuadForm(c, b2, a2)

    def reduce(self, f: QuadForm) -> QuadForm:
        steps = 0
        while not self.is_reduced(f):
            f = self.rho(f)
            steps += 1
            if steps > 10000:
                raise ArithmeticError(f"reduction did not terminate for {f}")
        return f

    def reduced_forms(self) -> List[QuadForm]:
        D, r = self.D, self.r
        out = []
        for b in range(1, r + 1):
            if (b - D) % 2:
                continue
            prod = (D - b * b) // 4  # = -ac > 0
            if prod <= 0:
                continue
            for a in _divisors(prod):
                if not (2 * a > r - b and 2 * a <= r + b):
                    continue
                c = -prod // a
                for s in (1, -1):
                    f = QuadForm(s * a, b, s * c)
                    if f.is_primitive():
                        out.append(f)
        return out


def _divisors(n: int) -> List[int]:
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


# --- group structure --------------------------------------------------------

def smith_invariants(rows: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero diagonal of the Smith normal form of an integer matrix,
    as a divisibility chain."""
    A = [list(r) for r in rows]
    if not A:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, pi, pj = min(cand)
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


@dataclass
class AbelianGroupStructure:
    invariant_factors: List[int]

    def __post_init__(self):
        fs = [f for f in self.invariant_factors if f != 1]
        for x, y in zip(fs, fs[1:]):
            if y % x:
                raise ValueError(f"invariant factors {fs} do not form a divisibility chain")
        self.invariant_factors = fs

    @property
    def order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    def l_rank(self, l: int, k: int = 1) -> int:
        """Number of invariant factors divisible by ``l^k``."""
        return sum(1 for f in self.invariant_factors if f % (l ** k) == 0)

    def describe(self) -> str:
        if not self.invariant_factors:
            return "trivial"
        return " + ".join(f"Z/{f}" for f in self.invariant_factors)

    def as_dict(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "order": self.order}


def two_sylow(g: AbelianGroupStructure, l: int = 2) -> AbelianGroupStructure:
    """l-primary part of ``g``."""
    out = []
    for f in g.invariant_factors:
        q = 1
        while f % l == 0:
            f //= l
            q *= l
        if q > 1:
            out.append(q)
    return AbelianGroupStructure(out)


class FormClassGroup:
    """Narrow class group of discriminant ``D`` as an explicit finite group."""

    def __init__(self, D: int, bound: int = DISC_BOUND):
        if not is_fundamental(D):
            raise DiscriminantError(f"{D} is not a fundamental discriminant")
        if abs(D) > bound:
            raise DiscriminantError(f"|D| = {abs(D)} exceeds the bound {bound}")
        self.D = D
        self._class_of: Dict[Tuple[int, int, int], int] = {}
        self.reps: List[QuadForm] = []
        if D < 0:
            self._ind = None
            for f in reduced_definite_forms(D):
                self._class_of[f.key()] = len(self.reps)
                self.reps.append(f)
        else:
            self._ind = _Indefinite(D)
            for f in self._ind.reduced_forms():
                if f.key() in self._class_of:
                    continue
                idx = len(self.reps)
                self.reps.append(f)
                g = f
                while True:
                    self._class_of[g.key()] = idx
                    g = self._ind.rho(g)
                    if g == f:
                        break
        self.identity = self.class_of(QuadForm.principal(D))
        self._structure: Optional[AbelianGroupStructure] = None

    @property
    def order(self) -> int:
        return len(self.reps)

    def reduce(self, f: QuadForm) -> QuadForm:
        if self._ind is None:
            return reduce_definite(f)
        return self._ind.reduce(f)

    def class_of(self, f: QuadForm) -> int:
        return self._class_of[self.reduce(f).key()]

    def cycle(self, idx: int) -> List[QuadForm]:
        return [QuadForm(*k) for k, v in self._class_of.items() if v == idx]

    def mul(self, i: int, j: int) -> int:
        return self.class_of(compose(self.reps[i], self.reps[j]))

    def inverse(self, i: int) -> int:
        return self.class_of(self.reps[i].opposite())

    def power(self, i: int, k: int) -> int:
        out, base = self.identity, i
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def structure(self) -> AbelianGroupStructure:
        if self._structure is None:
            self._structure = abelian_structure(range(self.order), self.mul, self.identity)
        return self._structure


def abelian_structure(elements: Iterable[Hashable], mul: Callable[[Hashable, Hashable], Hashable],
                      identity: Hashable) -> AbelianGroupStructure:
    """Invariant factors of a finite abelian group given by its elements and
    multiplication: greedy generators, their relation lattice, Smith form."""
    elements = list(elements)
    logs: Dict[Hashable, List[int]] = {identity: []}
    relations: List[List[int]] = []
    k = 0
    for cand in elements:
        if cand in logs:
            continue
        for v in logs.values():
            v.append(0)
        # smallest t with cand^t in the subgroup generated so far
        t, g = 1, cand
        while g not in logs:
            g = mul(g, cand)
            t += 1
        rel = [-a for a in logs[g]]
        rel[k] += t
        relations.append(rel)
        grown = dict(logs)
        layer = logs
        for s in range(1, t):
            layer = {mul(x, cand): v[:k] + [s] for x, v in layer.items()}
            grown.update(layer)
        logs = grown
        k += 1
    relations = [r + [0] * (k - len(r)) for r in relations]
    inv = smith_invariants(relations) if relations else []
    out = AbelianGroupStructure(sorted(f for f in inv if f != 1))
    if out.order != len(logs) or len(logs) != len(set(elements) | {identity}):
        raise ArithmeticError("group structure does not account for every element")
    return out


def narrow_class_group(D: int, bound: int = DISC_BOUND) -> AbelianGroupStructure:
    return FormClassGroup(D, bound).structure()


def _distinct_primes(D: int) -> List[int]:
    return sorted(set(factorize(D)))


@dataclass
class GenusReport:
    D: int
    n: int
    two_rank: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.two_rank == self.expected

    def as_dict(self) -> dict:
        return {"D": self.D, "prime_divisors": self.n, "two_rank": self.two_rank,
                "expected": self.expected, "ok": self.ok}


def genus_rank_check(D: int, group: Optional[AbelianGroupStructure] = None) -> GenusReport:
    """The narrow 2-rank equals the number of prime divisors of ``D`` minus one."""
    if group is None:
        group = narrow_class_group(D)
    n = len(_distinct_primes(D))
    return GenusReport(D, n, group.l_rank(2), n - 1)


@dataclass
class OracleComparison:
    primes: List[int]
    D: int
    predicted: Dict[int, int]
    oracle: Dict[int, int]
    prediction: ClassGroupPrediction
    group: AbelianGroupStructure
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.predicted) and all(self.oracle.get(d) == e for d, e in self.predicted.items())

    def as_dict(self) -> dict:
        return {
            "primes": self.primes,
            "D": self.D,
            "predicted_e": {str(d): e for d, e in sorted(self.predicted.items())},
            "oracle_e": {str(d): e for d, e in sorted(self.oracle.items())},
            "predicted_structure": self.prediction.describe(),
            "oracle_class_group": self.group.as_dict(),
            "oracle_two_sylow": two_sylow(self.group, 2).describe(),
            "verdict": "PASS" if self.passed else "FAIL",
            "notes": list(self.notes),
        }


def predict_vs_oracle(S: PrimeSet, d_max: int, prediction: Optional[ClassGroupPrediction] = None) -> OracleComparison:
    """Compare predicted ``e_d`` with the ranks read off the form class group
    of ``Q(sqrt(p_1 ... p_n))``.  Only ``l = 2`` has an oracle."""
    if S.l != 2:
        raise ValueError("the form-class oracle covers quadratic fields, so only l = 2")
    if prediction is None:
        prediction = class_group_prediction(S, d_max)
    D = S.discriminant()
    group = narrow_class_group(D)
    predicted = dict(prediction.e)
    notes = []
    if prediction.exponents is not None:
        # e_d vanishes beyond the level where it first reached 0
        last = max(predicted)
        for d in range(last + 1, d_max + 1):
            predicted[d] = 0
    else:
        notes.append(f"prediction incomplete: {prediction.stopped}")
    oracle = {d: group.l_rank(2, d) for d in range(1, max(predicted) + 1)}
    return OracleComparison(list(S.primes), D, predicted, oracle, prediction, group, notes)
