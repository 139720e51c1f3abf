import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arithtop.magnus import (
    MilnorTable,
    NCSeries,
    check_symmetries,
    fox_derive,
    fox_derive_word,
    higher_fox_eps,
    indeterminacy_indices,
    magnus_expand,
    milnor_table,
    proper_subsequences,
)
from arithtop.linkinv import braid_to_pd, link_milnor_table, pd_to_wirtinger, wirtinger_longitudes
from arithtop.words import FreeGroup, GroupRingElt, commutator, invert, parse_word

from conftest import words

F2 = FreeGroup(2)
F3 = FreeGroup(3)


def series(n, D, d):
    return NCSeries(n, D, d)


def test_magnus_generator_images():
    x1 = F2.gen(1)
    assert magnus_expand(x1, 2) == series(2, 2, {(): 1, (1,): 1})
    assert magnus_expand(invert(x1), 2) == series(2, 2, {(): 1, (1,): -1, (1, 1): 1})


def test_magnus_commutator():
    # hand product of (1+X1)(1+X2)(1-X1+X1^2)(1-X2+X2^2) up to degree 2
    c = commutator(F2.gen(1), F2.gen(2))
    assert magnus_expand(c, 2) == series(2, 2, {(): 1, (1, 2): 1, (2, 1): -1})


def test_fox_examples():
    x1, x2 = F2.gen(1), F2.gen(2)
    one = GroupRingElt.from_word(F2.identity())
    assert fox_derive_word(x1 * x2, 1) == one
    assert fox_derive_word(invert(x1), 1) == GroupRingElt.from_word(invert(x1), -1)
    # d[x1,x2]/dx1 = 1 - x1 x2 x1^-1
    c = commutator(x1, x2)
    expect = one - GroupRingElt.from_word(x1 * x2 * invert(x1))
    assert fox_derive_word(c, 1) == expect


def test_higher_fox_examples():
    x1, x2 = F2.gen(1), F2.gen(2)
    assert higher_fox_eps(x2, (2,)) == 1
    assert higher_fox_eps(x2, (1,)) == 0
    assert higher_fox_eps(commutator(x1, x2), (1, 2)) == 1


# --- property suites (each runs on at least 1000 random inputs) -------------

RNG_WORDS = 1000


def _random_word(rng, n, length):
    return FreeGroup(n).word(rng.choice([i, -i]) for i in (rng.randint(1, n) for _ in range(length)))


def test_magnus_homomorphism_random_pairs():
    rng = random.Random(11)
    for _ in range(RNG_WORDS):
        n = rng.randint(1, 3)
        D = rng.randint(1, 5)
        u, v = _random_word(rng, n, rng.randint(0, 8)), _random_word(rng, n, rng.randint(0, 8))
        assert magnus_expand(u * v, D) == magnus_expand(u, D) * magnus_expand(v, D)
        assert magnus_expand(u, D) * magnus_expand(invert(u), D) == NCSeries.one(n, D)


def test_fox_product_rule_random_pairs():
    rng = random.Random(12)
    for _ in range(RNG_WORDS):
        n = rng.randint(1, 3)
        u, v = _random_word(rng, n, rng.randint(0, 8)), _random_word(rng, n, rng.randint(0, 8))
        for i in range(1, n + 1):
            lhs = fox_derive_word(u * v, i)
            rhs = fox_derive_word(u, i) + fox_derive_word(v, i).left_mul(u)
            assert lhs == rhs


def test_fox_magnus_agreement_random_words():
    rng = random.Random(13)
    for _ in range(RNG_WORDS):
        n = rng.randint(1, 3)
        w = _random_word(rng, n, rng.randint(0, 10))
        r = rng.randint(1, 4)
        I = tuple(rng.randint(1, n) for _ in range(r))
        assert higher_fox_eps(w, I) == magnus_expand(w, r).coeff(I)


@given(words(3, 10))
def test_degree_one_is_exponent_sum(w):
    s = magnus_expand(w, 1)
    for i in (1, 2, 3):
        assert s.coeff((i,)) == w.exponent_sum(i)


@given(words(2, 8), st.integers(2, 6))
def test_modular_expansion_is_reduction(w, m):
    exact = magnus_expand(w, 3)
    red = magnus_expand(w, 3, modulus=m)
    assert red == NCSeries(2, 3, exact.coeffs, modulus=m)


@given(words(2, 6), words(2, 6))
def test_fox_linearity(u, v):
    a, b = GroupRingElt.from_word(u), GroupRingElt.from_word(v, 3)
    for i in (1, 2):
        assert fox_derive(a + b, i) == fox_derive(a, i) + fox_derive(b, i)


# --- Milnor tables ------------------------------------------------------------

def test_proper_subsequences():
    assert proper_subsequences((1, 2, 3)) == [(1, 2), (1, 3), (2, 3)]
    assert proper_subsequences((1, 2)) == []
    assert (2, 1) in indeterminacy_indices((1, 2, 3))


def test_hopf_table():
    t = milnor_table([parse_word(F2, "x2"), parse_word(F2, "x1")], 2)
    assert t.mu((1, 2)) == t.mu((2, 1)) == 1
    assert t.delta((1, 2)) == 0 and t.mubar((1, 2)) == 1
    assert check_symmetries(t) == []


def test_degree_below_two_rejected():
    with pytest.raises(ValueError):
        milnor_table([parse_word(F2, "x2"), parse_word(F2, "x1")], 1)


def test_constructed_violation_flagged():
    t = MilnorTable.from_mu(2, 2, {(1, 2): 1, (2, 1): 0, (1, 1): 0, (2, 2): 0})
    kinds = {v.kind for v in check_symmetries(t)}
    assert "cyclic" in kinds


def test_binomial_indeterminacy():
    # l^{e_S} = 4: gcd of C(4,1), C(4,2) is 2, so mu = 3 reduces to 1
    t = MilnorTable.from_mu(2, 2, {(1, 2): 3, (2, 1): 3, (1, 1): 0, (2, 2): 0}, modulus=4, l_power=4)
    assert t.delta((1, 2)) == 2 and t.mubar((1, 2)) == 1


@settings(max_examples=300)
@given(st.integers(2, 4).flatmap(
    lambda s: st.tuples(st.just(s), st.lists(st.integers(1, s - 1).flatmap(lambda i: st.sampled_from([i, -i])),
                                             min_size=1, max_size=10))))
def test_symmetries_on_braid_closures(braid):
    # longitudes of genuine links; arbitrary words need not satisfy the relations
    strands, word = braid
    w = pd_to_wirtinger(braid_to_pd(word, strands))
    lp = wirtinger_longitudes(w, 3)
    if lp.n < 2:
        return
    assert check_symmetries(link_milnor_table(lp, 4)) == []
