import random
from math import gcd, isqrt

import pytest
from hypothesis import given, settings, strategies as st

from arithtop.classgroup import (
    AbelianGroupStructure,
    DiscriminantError,
    FormClassGroup,
    QuadForm,
    compose,
    genus_rank_check,
    is_fundamental,
    narrow_class_group,
    predict_vs_oracle,
    smith_invariants,
    two_sylow,
)
from arithtop.primeinv import PrimeSet, is_prime


def brute_definite_count(D):
    # independent count of reduced primitive forms |b| <= a <= c
    n = 0
    for a in range(1, isqrt(-D // 3) + 2):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or gcd(gcd(a, b), c) != 1:
                continue
            if b < 0 and a == c:
                continue
            n += 1
    return n


# narrow class numbers of real quadratic fields, from standard tables
NARROW_H = {5: 1, 8: 1, 12: 2, 13: 1, 17: 1, 21: 2, 24: 2, 28: 2, 29: 1, 60: 4,
            65: 2, 105: 4, 229: 3}


@pytest.mark.parametrize("D,h", sorted(NARROW_H.items()))
def test_narrow_class_numbers(D, h):
    assert narrow_class_group(D).order == h


@pytest.mark.parametrize("D", [-3, -4, -23, -47, -71, -84, -163, -420, -1155, -5291])
def test_definite_counts_match_brute_force(D):
    assert narrow_class_group(D).order == brute_definite_count(D)


@pytest.mark.parametrize("D,factors", [
    (5, []), (65, [2]), (-23, [3]), (-84, [2, 2]), (-420, [2, 2, 2]),
    (145, [4]), (229, [3]), (743041, None),
])
def test_structures(D, factors):
    g = narrow_class_group(D)
    if factors is not None:
        assert g.invariant_factors == factors
    else:
        assert two_sylow(g).invariant_factors == [4, 4]


def test_two_sylow():
    assert two_sylow(AbelianGroupStructure([12])).invariant_factors == [4]
    assert two_sylow(AbelianGroupStructure([])).invariant_factors == []
    assert two_sylow(AbelianGroupStructure([4, 4]), 3).invariant_factors == []
    assert two_sylow(AbelianGroupStructure([3, 9]), 3).invariant_factors == [3, 9]


def test_divisibility_chain_enforced():
    with pytest.raises(ValueError):
        AbelianGroupStructure([4, 6])


def test_smith_invariants_small():
    assert smith_invariants([[2, 0], [0, 3]]) == [1, 6]
    assert smith_invariants([[4, 0], [0, 4]]) == [4, 4]


@pytest.mark.parametrize("D", [1, 4, 12 * 9, 45, -8 * 4, 0])
def test_rejects_non_fundamental(D):
    assert not is_fundamental(D)
    with pytest.raises(DiscriminantError):
        FormClassGroup(D)


def test_bound():
    with pytest.raises(DiscriminantError):
        FormClassGroup(743041, bound=1000)


@pytest.mark.parametrize("D,n,rank", [(5, 1, 0), (65, 2, 1), (743041, 3, 2), (1105, 3, 2)])
def test_genus_rank(D, n, rank):
    rep = genus_rank_check(D)
    assert rep.n == n and rep.two_rank == rank and rep.ok


def _primes_1_mod_4(limit):
    return [p for p in range(5, limit) if p % 4 == 1 and is_prime(p)]


def test_genus_count_family():
    rng = random.Random(3)
    ps = _primes_1_mod_4(120)
    for _ in range(15):
        k = rng.randint(1, 3)
        qs = rng.sample(ps, k)
        D = 1
        for q in qs:
            D *= q
        g = FormClassGroup(D)
        squares = {g.mul(i, i) for i in range(g.order)}
        # H / H^2 has order 2^(n-1)
        assert g.order // len(squares) == 2 ** (k - 1)


@pytest.mark.parametrize("D", [-420, -5291, 145, 221, 1105, 4 * 79])
def test_group_axioms(D):
    g = FormClassGroup(D)
    assert g.reps[g.identity] == g.reduce(QuadForm.principal(D)) or g.class_of(QuadForm.principal(D)) == g.identity
    for i in range(g.order):
        assert g.mul(i, g.identity) == i
        assert g.mul(i, g.inverse(i)) == g.identity
    rng = random.Random(D)
    for _ in range(30):
        a, b, c = (rng.randrange(g.order) for _ in range(3))
        assert g.mul(a, b) == g.mul(b, a)
        assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


@pytest.mark.parametrize("D", [145, 221, 1105, 4 * 79, 8 * 7])
def test_order_counts_cycles(D):
    g = FormClassGroup(D)
    keys = {}
    for i in range(g.order):
        for f in g.cycle(i):
            assert f.disc == D and f.is_primitive()
            keys[f.key()] = i
    assert len(set(keys.values())) == g.order


@settings(max_examples=40)
@given(st.sampled_from([145, 221, 1105, 316, 2 * 4 * 17 * 3]), st.randoms(use_true_random=False))
def test_composition_well_defined_on_cycles(D, rnd):
    if not is_fundamental(D):
        return
    g = FormClassGroup(D)
    i, j = rnd.randrange(g.order), rnd.randrange(g.order)
    f1 = rnd.choice(g.cycle(i))
    f2 = rnd.choice(g.cycle(j))
    assert g.class_of(compose(f1, f2)) == g.mul(i, j)


def test_compose_rejects_mixed_discriminants():
    with pytest.raises(ValueError):
        compose(QuadForm.principal(5), QuadForm.principal(13))


def test_oracle_borromean():
    cmp = predict_vs_oracle(PrimeSet(2, [13, 61, 937]), 3)
    assert cmp.passed
    assert cmp.predicted[2] == 2 and cmp.predicted[3] == 0
    assert two_sylow(cmp.group).invariant_factors == [4, 4]


def test_oracle_two_primes():
    cmp = predict_vs_oracle(PrimeSet(2, [5, 13]), 2)
    assert cmp.passed and cmp.predicted[2] == 0
    assert cmp.D == 65


def test_oracle_needs_l_2():
    with pytest.raises(ValueError):
        predict_vs_oracle(PrimeSet(3, [7, 13]), 2)
