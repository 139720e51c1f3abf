import random
from itertools import combinations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from arithtop.chainring import (
    ChainMatrix,
    ChainRingElt,
    e_d_from_divisors,
    expand_rank_product,
    snf,
    zeta_rank_inversion,
)


def elt(l, d, n):
    return ChainRingElt.from_int(l, d, n)


def test_l2_digits_are_base_minus_two():
    pi = ChainRingElt.pi_power(2, 3, 1)
    assert pi.digits == (0, 1, 0)
    assert (pi * pi).digits == (0, 0, 1)
    assert (pi * pi).to_int() == 4
    assert (elt(2, 3, 3) + elt(2, 3, 5)).is_zero()


def test_l3_relation():
    zeta = ChainRingElt.one(3, 2) + ChainRingElt.pi_power(3, 2, 1)
    pi = ChainRingElt.pi_power(3, 2, 1)
    assert (pi * pi).is_zero()
    assert zeta ** 3 == ChainRingElt.one(3, 2)


@pytest.mark.parametrize("l,d", [(3, 4), (5, 6), (7, 3)])
def test_zeta_has_order_l(l, d):
    zeta = ChainRingElt.one(l, d) + ChainRingElt.pi_power(l, d, 1)
    assert zeta ** l == ChainRingElt.one(l, d)
    assert zeta ** 1 != ChainRingElt.one(l, d)


@pytest.mark.parametrize("l,d", [(3, 4), (5, 5)])
def test_valuation_of_l(l, d):
    # l = unit * pi^(l-1) in Z_l[zeta]
    assert elt(l, d, l).valuation() == min(l - 1, d)


def test_mismatched_rings_rejected():
    with pytest.raises(ValueError):
        elt(2, 3, 1) + elt(2, 4, 1)


@given(st.integers(1, 6), st.integers(-200, 200), st.integers(-200, 200))
def test_l2_matches_integers_mod_2d(d, a, b):
    m = 2 ** d
    x, y = elt(2, d, a), elt(2, d, b)
    assert (x + y).to_int() == (a + b) % m
    assert (x * y).to_int() == (a * b) % m
    assert (-x).to_int() == (-a) % m
    assert x.valuation() == (d if a % m == 0 else min(d, (a & -a).bit_length() - 1))


@given(st.sampled_from([3, 5]), st.integers(1, 5), st.lists(st.integers(0, 4), min_size=5, max_size=5),
       st.lists(st.integers(0, 4), min_size=5, max_size=5))
def test_ring_axioms(l, d, a, b):
    x = ChainRingElt.from_poly(l, d, a)
    y = ChainRingElt.from_poly(l, d, b)
    z = ChainRingElt.from_poly(l, d, a[::-1])
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x.is_unit():
        assert x * x.inverse() == ChainRingElt.one(l, d)


def test_snf_examples():
    assert snf(ChainMatrix.identity(2, 3, 3)) == [0, 0, 0]
    assert snf(ChainMatrix.from_ints(2, 3, [[2, 0], [0, 4]])) == [1, 2]
    T = ChainMatrix.from_ints(2, 3, [[0, 4, 4], [4, 0, 4], [4, 4, 0]])
    v = snf(T)
    assert v == [2, 2, 3]  # divisors 4, 4, 0 mod 8
    assert e_d_from_divisors(v, 2) == 2
    assert e_d_from_divisors(v, 3) == 0
    assert e_d_from_divisors([0, 0, 3], 1) == 0


def _random_unimodular(rng, l, d, n):
    M = ChainMatrix.identity(l, d, n)
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        E = [[ChainRingElt.one(l, d) if a == b else ChainRingElt.zero(l, d) for b in range(n)] for a in range(n)]
        if i != j:
            E[i][j] = ChainRingElt.from_poly(l, d, [rng.randrange(l) for _ in range(d)])
        unit = ChainRingElt.from_poly(l, d, [rng.randrange(1, l)] + [rng.randrange(l) for _ in range(d - 1)])
        E[j][j] = unit
        M = M @ ChainMatrix(l, d, E)
    return M


def _random_matrix(rng, l, d, n):
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            shift = rng.randrange(d + 1)
            digits = [0] * shift + [rng.randrange(l) for _ in range(d - shift)]
            row.append(ChainRingElt(l, d, digits[:d]))
        rows.append(row)
    return ChainMatrix(l, d, rows)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_snf_unimodular_invariance(n):
    rng = random.Random(100 + n)
    for _ in range(200):
        l = rng.choice([2, 3, 5])
        d = rng.randint(1, 4)
        M = _random_matrix(rng, l, d, n)
        v = snf(M)
        assert v == sorted(v)
        U, V = _random_unimodular(rng, l, d, n), _random_unimodular(rng, l, d, n)
        assert snf(U @ M @ V) == v


def _determinantal_valuations(M, d):
    """Elementary divisor valuations over Z_2 from gcds of k-minors, capped at d."""
    n = len(M)
    A = sympy.Matrix(M)
    out, prev = [], 0
    for k in range(1, n + 1):
        best = None
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                det = A.extract(list(rows), list(cols)).det()
                if det:
                    v = sympy.multiplicity(2, det)
                    best = v if best is None else min(best, v)
        if best is None:
            out += [d] * (n - k + 1)
            break
        out.append(min(best - prev, d))
        prev = best
    return out


def test_snf_against_determinantal_divisors():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(1, 4)
        d = rng.randint(1, 5)
        M = [[rng.randint(-20, 20) * 2 ** rng.randint(0, 3) for _ in range(n)] for _ in range(n)]
        assert snf(ChainMatrix.from_ints(2, d, M)) == _determinantal_valuations(M, d)


def test_zeta_examples():
    assert zeta_rank_inversion([1, -2, 1], 4) == [2, 0, 0, 0]
    assert zeta_rank_inversion([1, -3, 2], 3) == [3, 1, 2]
    assert zeta_rank_inversion([1], 3) == [0, 0, 0]
    with pytest.raises(ValueError):
        zeta_rank_inversion([2, 1], 3)


def _witt(n, k):
    return sum(sympy.mobius(k // e) * n ** e for e in sympy.divisors(k)) // k


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("D", range(1, 9))
def test_zeta_round_trip_rank_formulas(n, D):
    free_type = [1, -n, n - 1]              # (1 - t)(1 - (n-1) t)
    relation_type = [1, -(n + 1), 2 * n, -n]  # (1 - t)(1 - n t + n t^2)
    for f in (free_type, relation_type):
        a = zeta_rank_inversion(f, D)
        padded = (f + [0] * (D + 1))[: D + 1]
        assert expand_rank_product(a, D) == padded
    # the first family gives the ranks of a free group on n - 1 generators plus one
    a = zeta_rank_inversion(free_type, D)
    assert a[0] == n
    for k in range(2, D + 1):
        assert a[k - 1] == _witt(n - 1, k)
