import random

import pytest

from arithtop.covering import (
    CoveringError,
    FiniteAction,
    Transfer,
    cyclic_group,
    decompose,
    dicyclic_group,
    dihedral_group,
    galois_check,
    heisenberg_group,
    perm_inv,
    perm_mul,
    random_action,
    regular_action,
    symmetric_group,
    transfer_kernel,
)


def test_trivial_cover():
    d = decompose(FiniteAction(1, {"tau": [0], "sigma": [0]}))
    assert d.r == 1 and (d.orbits[0].e, d.orbits[0].f) == (1, 1)


def test_ramified_double_cover():
    d = decompose(FiniteAction(2, {"tau": [1, 0], "sigma": [0, 1]}))
    assert d.r == 1 and (d.orbits[0].e, d.orbits[0].f) == (2, 1)


def test_inert_and_split_cubic():
    inert = decompose(FiniteAction(3, {"tau": [0, 1, 2], "sigma": [1, 2, 0]}))
    assert inert.r == 1 and (inert.orbits[0].e, inert.orbits[0].f) == (1, 3)
    split = decompose(FiniteAction(3, {"tau": [0, 1, 2], "sigma": [0, 1, 2], "x": [1, 2, 0]}))
    assert split.r == 3 and all((o.e, o.f) == (1, 1) for o in split.orbits)


def test_sum_ef_on_random_actions():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(1, 12)
        act = random_action(rng, n, extra=rng.randint(1, 2))
        assert decompose(act).total() == n


def test_invalid_actions():
    with pytest.raises(CoveringError):
        FiniteAction(2, {"tau": [0, 0], "sigma": [0, 1]})
    with pytest.raises(CoveringError):
        FiniteAction(2, {"tau": [0, 1], "sigma": [0, 1]})  # not transitive
    with pytest.raises(CoveringError):
        FiniteAction(2, {"tau": [1, 0]})
    with pytest.raises(CoveringError):
        # tau = (0 1), sigma = (1 2): <tau> not normal
        FiniteAction(3, {"tau": [1, 0, 2], "sigma": [0, 2, 1]})


def test_json_round_trip():
    act = FiniteAction.from_json({"degree": 3, "gens": {"tau": [1, 2, 3], "sigma": [2, 3, 1]}})
    again = FiniteAction.from_json(act.to_json())
    assert again.gens == act.gens
    with pytest.raises(CoveringError):
        FiniteAction.from_json({"degree": 3, "gens": {"tau": [1, 2], "sigma": [2, 3, 1]}})


def z4_action(tau, sigma):
    els = list(range(4))
    return regular_action(els, lambda a, b: (a + b) % 4, {"tau": tau, "sigma": sigma, "x": 1})


@pytest.mark.parametrize("sigma,e,f,r", [(1, 2, 2, 1), (0, 2, 1, 2), (2, 2, 1, 2), (3, 2, 2, 1)])
def test_galois_z4(sigma, e, f, r):
    rep = galois_check(z4_action(2, sigma))
    assert rep.ok and (rep.e, rep.f, rep.r) == (e, f, r)


def test_galois_trivial_peripheral():
    els = list(range(5))
    act = regular_action(els, lambda a, b: (a + b) % 5, {"tau": 0, "sigma": 0, "x": 1})
    rep = galois_check(act)
    assert rep.ok and (rep.e, rep.f, rep.r) == (1, 1, 5)


def test_galois_on_nonabelian_regular_actions():
    rng = random.Random(5)
    for G in (symmetric_group(3), dihedral_group(5), dicyclic_group(3), heisenberg_group(3)):
        els = G.elements
        count = 0
        while count < 10:
            s, t = rng.choice(els), rng.choice(els)
            try:
                act = regular_action(els, G.mul, {"tau": t, "sigma": s, "g0": G.gens[0], "g1": G.gens[-1]})
            except CoveringError:
                continue
            rep = galois_check(act)
            assert rep.ok, rep.problems
            assert rep.e * rep.f * rep.r == G.order
            count += 1


def test_non_regular_rejected():
    act = FiniteAction(3, {"tau": [1, 0, 2], "sigma": [1, 0, 2], "x": [1, 2, 0]})
    with pytest.raises(CoveringError):
        galois_check(act)


def left_transfer(G, H, g):
    """Transfer through a left transversal: g t_i = t_j h_i."""
    reps, seen = [], set()
    for x in G.elements:
        if x not in seen:
            reps.append(x)
            seen.update(perm_mul(x, h) for h in H)
    acc = G.identity
    for t in reps:
        gt = perm_mul(g, t)
        t2 = next(u for u in reps if perm_mul(perm_inv(u), gt) in H)
        acc = perm_mul(acc, perm_mul(perm_inv(t2), gt))
    return acc


def test_z4_transfer_is_squaring():
    G = cyclic_group(4)
    H = G.subgroup([perm_mul(G.gens[0], G.gens[0])])
    res = transfer_kernel(G, H)
    assert res.index == 2 and res.kernel_order == 2 and res.divisible


def test_q8_over_center_matches_left_oracle():
    G = dicyclic_group(2)
    assert G.order == 8
    Z = frozenset(z for z in G.elements if all(perm_mul(z, g) == perm_mul(g, z) for g in G.elements))
    assert len(Z) == 2
    res = transfer_kernel(G, Z)
    V = Transfer(G, Z)
    kernel = {g for g in G.elements if left_transfer(G, Z, g) in V.H_derived}
    Gd = G.derived()
    assert res.kernel_order == len(kernel) // len(Gd)
    assert res.kernel_order % 4 == 0


def test_trivial_index():
    G = symmetric_group(3)
    res = transfer_kernel(G, frozenset(G.elements))
    assert res.index == 1 and res.kernel_order == 1


def test_rejects_nonabelian_quotient():
    G = symmetric_group(3)
    with pytest.raises(ValueError):
        transfer_kernel(G, frozenset([G.identity]))


@pytest.mark.parametrize("G", [dihedral_group(4), dicyclic_group(3), heisenberg_group(3), symmetric_group(4)],
                         ids=lambda g: g.name)
def test_transfer_homomorphism_and_left_agreement(G):
    rng = random.Random(G.order)
    Gd = G.derived()
    H = G.subgroup(list(Gd) + [G.gens[0]])
    V = Transfer(G, H)
    for _ in range(40):
        a, b = rng.choice(G.elements), rng.choice(G.elements)
        assert V.same_class(V(perm_mul(a, b)), perm_mul(V(a), V(b)))
        assert V.same_class(V(a), left_transfer(G, H, a))


def test_abelian_transfer_is_power():
    for m, k in [(12, 2), (12, 3), (9, 3), (8, 4)]:
        G = cyclic_group(m)
        g = G.gens[0]
        hgen = g
        for _ in range(k - 1):
            hgen = perm_mul(hgen, g)
        H = G.subgroup([hgen])
        V = Transfer(G, H)
        assert V.index == k
        for x in G.elements:
            p = G.identity
            for _ in range(k):
                p = perm_mul(p, x)
            assert V(x) == p
