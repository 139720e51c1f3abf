"""Decomposition of a knot in a finite covering, and transfer kernels of
finite groups.

A covering of degree ``n`` is given by its monodromy: a permutation of
``{0..n-1}`` for every generator, together with the images of the
meridian ``tau`` and longitude ``sigma`` of the knot being decomposed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .classgroup import AbelianGroupStructure, abelian_structure

Perm = Tuple[int, ...]


def perm_mul(p: Perm, q: Perm) -> Perm:
    """``p * q`` acts as ``q`` first, then ``p``."""
    return tuple(p[i] for i in q)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def orbits(n: int, gens: Iterable[Perm]) -> List[List[int]]:
    gens = list(gens)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        orb, stack = [s], [s]
        seen[s] = True
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
                    stack.append(y)
        out.append(sorted(orb))
    return out


def generate(gens: Sequence[Perm], n: int, limit: int = 200000) -> List[Perm]:
    """All elements of the permutation group generated by ``gens``."""
    e = identity_perm(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise ValueError(f"group order exceeds {limit}")
        frontier = nxt
    return sorted(seen)


class CoveringError(ValueError):
    pass


# --- decomposition law ------------------------------------------------------

class FiniteAction:
    """Monodromy of a degree-n covering with peripheral data ``tau, sigma``."""

    def __init__(self, degree: int, gens: Mapping[str, Sequence[int]], tau: str = "tau", sigma: str = "sigma"):
        self.degree = n = int(degree)
        if n < 1:
            raise CoveringError("degree must be positive")
        self.gens: Dict[str, Perm] = {}
        for name, p in gens.items():
            p = tuple(int(x) for x in p)
            if sorted(p) != list(range(n)):
                raise CoveringError(f"generator {name!r} is not a permutation of 0..{n - 1}")
            self.gens[name] = p
        for key in (tau, sigma):
            if key not in self.gens:
                raise CoveringError(f"missing peripheral generator {key!r}")
        self.tau = self.gens[tau]
        self.sigma = self.gens[sigma]
        if len(orbits(n, self.gens.values())) != 1:
            raise CoveringError("monodromy is not transitive")
        if perm_mul(self.tau, self.sigma) != perm_mul(self.sigma, self.tau):
            # the weaker requirement is that <tau> is normal in <tau, sigma>
            st = perm_mul(perm_mul(self.sigma, self.tau), perm_inv(self.sigma))
            powers = set(_cyclic(self.tau))
            if st not in powers or perm_mul(perm_mul(perm_inv(self.sigma), self.tau), self.sigma) not in powers:
                raise CoveringError("<tau> is not normal in <tau, sigma>")

    @classmethod
    def from_json(cls, data) -> "FiniteAction":
        """``{"degree": n, "gens": {"tau": [...], "sigma": [...]}}`` with
        permutations of ``1..n`` in one-line notation."""
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["degree"])
        gens = {}
        for name, p in data["gens"].items():
            if len(p) != n:
                raise CoveringError(f"generator {name!r} has length {len(p)}, expected {n}")
            gens[name] = [int(x) - 1 for x in p]
        return cls(n, gens)

    def to_json(self) -> dict:
        return {"degree": self.degree, "gens": {k: [x + 1 for x in p] for k, p in sorted(self.gens.items())}}


def _cyclic(p: Perm) -> List[Perm]:
    out = [identity_perm(len(p))]
    x = p
    while x != out[0]:
        out.append(x)
        x = perm_mul(p, x)
    return out


@dataclass
class OrbitData:
    points: List[int]
    e: int
    f: int

    def as_dict(self) -> dict:
        return {"size": len(self.points), "e": self.e, "f": self.f, "points": [x + 1 for x in self.points]}


@dataclass
class Decomposition:
    degree: int
    orbits: List[OrbitData]

    @property
    def r(self) -> int:
        return len(self.orbits)

    def total(self) -> int:
        return sum(o.e * o.f for o in self.orbits)

    def as_dict(self) -> dict:
        return {"degree": self.degree, "r": self.r, "sum_ef": self.total(),
                "orbits": [o.as_dict() for o in self.orbits]}


def decompose(act: FiniteAction) -> Decomposition:
    """Orbits of ``<tau, sigma>`` are the knots over ``K``; inside an orbit
    ``e`` is the size of a ``tau``-orbit and ``f`` the length of the
    ``sigma``-orbit on the set of ``tau``-orbits."""
    n = act.degree
    out = []
    tau_blocks = orbits(n, [act.tau])
    block_of = {}
    for b, blk in enumerate(tau_blocks):
        for x in blk:
            block_of[x] = b
    for orb in orbits(n, [act.tau, act.sigma]):
        start = block_of[orb[0]]
        f, b = 0, start
        while True:
            b = block_of[act.sigma[tau_blocks[b][0]]]
            f += 1
            if b == start:
                break
        if len(orb) % f:
            raise CoveringError(f"orbit of size {len(orb)} is not divisible by f = {f}")
        e = len(orb) // f
        if any(len(tau_blocks[block_of[x]]) != e for x in orb):
            raise CoveringError("tau-orbits inside one decomposition orbit have different sizes")
        out.append(OrbitData(orb, e, f))
    dec = Decomposition(n, out)
    if dec.total() != n:
        raise CoveringError(f"sum of e f = {dec.total()} differs from n = {n}")
    return dec


@dataclass
class GaloisReport:
    n: int
    e: int
    f: int
    r: int
    inertia_order: int
    decomposition_order: int
    quotient_cyclic: bool
    problems: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def as_dict(self) -> dict:
        return {"n": self.n, "e": self.e, "f": self.f, "r": self.r,
                "inertia_order": self.inertia_order, "decomposition_order": self.decomposition_order,
                "quotient_cyclic": self.quotient_cyclic, "ok": self.ok, "problems": list(self.problems)}


def galois_check(act: FiniteAction) -> GaloisReport:
    """Inertia and decomposition groups of a regular (Galois) covering."""
    n = act.degree
    G = generate(list(act.gens.values()), n)
    if len(G) != n:
        raise CoveringError(f"monodromy group has order {len(G)}, not {n}: covering is not Galois")
    dec = decompose(act)
    es = {o.e for o in dec.orbits}
    fs = {o.f for o in dec.orbits}
    problems = []
    if len(es) != 1 or len(fs) != 1:
        problems.append(f"e or f varies across orbits: e={sorted(es)}, f={sorted(fs)}")
    e, f = dec.orbits[0].e, dec.orbits[0].f
    I = generate([act.tau], n)
    Dg = generate([act.tau, act.sigma], n)
    if len(I) != e:
        problems.append(f"#I = {len(I)} but e = {e}")
    if len(Dg) != e * f:
        problems.append(f"#D = {len(Dg)} but e f = {e * f}")
    if e * f * dec.r != n:
        problems.append(f"e f r = {e * f * dec.r} but n = {n}")
    # D / I is generated by the image of sigma
    Iset = set(I)
    coset_count, x = 0, identity_perm(n)
    while True:
        x = perm_mul(act.sigma, x)
        coset_count += 1
        if x in Iset:
            break
    cyclic = coset_count * len(I) == len(Dg)
    if not cyclic:
        problems.append("D/I is not generated by sigma")
    return GaloisReport(n, e, f, dec.r, len(I), len(Dg), cyclic, problems)


def random_action(rng: random.Random, n: int, extra: int = 1) -> FiniteAction:
    """A transitive action with commuting ``tau, sigma``.

    Each ``<tau, sigma>``-orbit is ``Z^2`` modulo a lattice
    ``<(a, 0), (t, b)>``; extra generators make the action transitive.
    """
    sizes = []
    left = n
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    tau = [0] * n
    sigma = [0] * n
    base = 0
    for s in sizes:
        divs = [a for a in range(1, s + 1) if s % a == 0]
        a = rng.choice(divs)
        b = s // a
        t = rng.randrange(a)

        def idx(x, y):
            return base + y * a + x

        for y in range(b):
            for x in range(a):
                tau[idx(x, y)] = idx((x + 1) % a, y)
                if y + 1 < b:
                    sigma[idx(x, y)] = idx(x, y + 1)
                else:
                    sigma[idx(x, y)] = idx((x - t) % a, 0)
        base += s
    relabel = list(range(n))
    rng.shuffle(relabel)
    inv = perm_inv(tuple(relabel))

    def conj(p):
        return [relabel[p[inv[i]]] for i in range(n)]

    gens = {"tau": conj(tau), "sigma": conj(sigma)}
    cycle = list(range(n))
    rng.shuffle(cycle)
    x1 = [0] * n
    for i in range(n):
        x1[cycle[i]] = cycle[(i + 1) % n]
    gens["x1"] = x1
    for k in range(2, extra + 1):
        p = list(range(n))
        rng.shuffle(p)
        gens[f"x{k}"] = p
    return FiniteAction(n, gens)


def regular_action(elements: Sequence, mul: Callable, gens: Mapping[str, object]) -> FiniteAction:
    """Left-regular action of a finite group on itself."""
    index = {g: i for i, g in enumerate(elements)}
    perms = {name: [index[mul(g, x)] for x in elements] for name, g in gens.items()}
    return FiniteAction(len(elements), perms)


# --- transfer ---------------------------------------------------------------

class FiniteGroupTable:
    """A finite permutation group with its elements enumerated."""

    def __init__(self, gens: Sequence[Sequence[int]], name: str = ""):
        gens = [tuple(g) for g in gens]
        if not gens:
            raise ValueError("need at least one generator")
        self.n = len(gens[0])
        self.gens = gens
        self.name = name
        self.elements = generate(gens, self.n)
        self.identity = identity_perm(self.n)
        self._index = {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: Perm, b: Perm) -> Perm:
        return perm_mul(a, b)

    def inv(self, a: Perm) -> Perm:
        return perm_inv(a)

    def subgroup(self, gens: Iterable[Sequence[int]]) -> frozenset:
        gens = [tuple(g) for g in gens]
        if not gens:
            return frozenset([self.identity])
        return frozenset(generate(gens, self.n))

    def derived(self, H: Optional[frozenset] = None) -> frozenset:
        H = frozenset(self.elements) if H is None else H
        comms = {perm_mul(perm_mul(a, b), perm_mul(perm_inv(a), perm_inv(b))) for a in H for b in H}
        return self.subgroup(comms)

    def is_subgroup(self, H: frozenset) -> bool:
        return self.identity in H and all(perm_mul(a, b) in H for a in H for b in H)

    @classmethod
    def from_table(cls, elements: Sequence, mul: Callable, gens: Sequence, name: str = "") -> "FiniteGroupTable":
        """Permutation group of the left-regular representation."""
        index = {g: i for i, g in enumerate(elements)}
        perms = [[index[mul(g, x)] for x in elements] for g in gens]
        return cls(perms, name)


def _right_transversal(G: FiniteGroupTable, H: frozenset) -> List[Perm]:
    reps, covered = [], set()
    for g in G.elements:
        if g in covered:
            continue
        reps.append(g)
        covered.update(perm_mul(h, g) for h in H)
    return reps


@dataclass
class TransferResult:
    order_gamma: int
    index: int
    abelianization: AbelianGroupStructure
    kernel: AbelianGroupStructure
    kernel_order: int

    @property
    def divisible(self) -> bool:
        return self.kernel_order % self.index == 0

    def as_dict(self) -> dict:
        return {"order": self.order_gamma, "index": self.index,
                "abelianization": self.abelianization.invariant_factors,
                "kernel": self.kernel.invariant_factors, "kernel_order": self.kernel_order,
                "divisible_by_index": self.divisible}


class Transfer:
    """Transfer ``V: G/G' -> H/H'`` by the coset-representative formula."""

    def __init__(self, G: FiniteGroupTable, H: frozenset):
        if not G.is_subgroup(H):
            raise ValueError("H is not a subgroup")
        self.G, self.H = G, H
        self.H_derived = G.derived(H)
        self.reps = _right_transversal(G, H)
        self._coset_of = {}
        for i, t in enumerate(self.reps):
            for h in H:
                self._coset_of[perm_mul(h, t)] = i

    @property
    def index(self) -> int:
        return len(self.reps)

    def _h_class(self, h: Perm) -> frozenset:
        return frozenset(perm_mul(h, k) for k in self.H_derived)

    def __call__(self, g: Perm) -> Perm:
        """A representative in ``H`` of ``V(g)`` modulo ``H'``."""
        acc = self.G.identity
        for t in self.reps:
            tg = perm_mul(t, g)
            t2 = self.reps[self._coset_of[tg]]
            h = perm_mul(tg, perm_inv(t2))
            acc = perm_mul(acc, h)
        return acc

    def same_class(self, a: Perm, b: Perm) -> bool:
        return perm_mul(a, perm_inv(b)) in self.H_derived


def transfer_kernel(G: FiniteGroupTable, H: frozenset) -> TransferResult:
    """Kernel of the transfer to ``H`` as a subgroup of ``G/G'``.

    Requires ``G' <= H`` (``G/H`` abelian)."""
    Gd = G.derived()
    if not Gd <= H:
        raise ValueError("G/H is not abelian")
    V = Transfer(G, H)
    # cosets of G'
    coset_key: Dict[Perm, Perm] = {}
    for g in G.elements:
        if g in coset_key:
            continue
        members = [perm_mul(g, k) for k in Gd]
        key = min(members)
        for m in members:
            coset_key[m] = key
    cosets = sorted(set(coset_key.values()))

    def qmul(a, b):
        return coset_key[perm_mul(a, b)]

    e = coset_key[G.identity]
    ab = abelian_structure(cosets, qmul, e)
    kernel = [c for c in cosets if V(c) in V.H_derived]
    ker = abelian_structure(kernel, qmul, e)
    return TransferResult(G.order, V.index, ab, ker, len(kernel))


def subgroups_over_derived(G: FiniteGroupTable) -> List[frozenset]:
    """Subgroups ``H`` with ``G' <= H``, generated by ``G'`` and up to two
    further elements (enough for every library group)."""
    Gd = G.derived()
    out = {Gd}
    elems = G.elements
    for a in elems:
        out.add(G.subgroup(list(Gd) + [a]))
    base = sorted(out, key=len)
    for H in list(base):
        for a in elems:
            if a not in H:
                out.add(G.subgroup(list(H) + [a]))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


# --- group library ----------------------------------------------------------

def cyclic_group(m: int) -> FiniteGroupTable:
    return FiniteGroupTable([tuple((i + 1) % m for i in range(m))], f"C{m}")


def dihedral_group(m: int) -> FiniteGroupTable:
    rot = tuple((i + 1) % m for i in range(m))
    ref = tuple((-i) % m for i in range(m))
    return FiniteGroupTable([rot, ref], f"D{2 * m}")


def symmetric_group(m: int) -> FiniteGroupTable:
    cyc = tuple((i + 1) % m for i in range(m))
    sw = (1, 0) + tuple(range(2, m))
    return FiniteGroupTable([cyc, sw], f"S{m}")


def alternating_group(m: int) -> FiniteGroupTable:
    gens = []
    for k in range(2, m):
        p = list(range(m))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return FiniteGroupTable(gens, f"A{m}")


def dicyclic_group(m: int) -> FiniteGroupTable:
    """``<a, x | a^{2m}, x^2 = a^m, x a x^-1 = a^-1>``; quaternion for m = 2."""
    N = 2 * m
    elements = [(i, j) for j in range(2) for i in range(N)]

    def mul(p, q):
        i, j = p
        k, l = q
        i2 = (i + (k if j == 0 else -k)) % N
        if j == 1 and l == 1:
            return ((i2 + m) % N, 0)
        return (i2, j + l)

    return FiniteGroupTable.from_table(elements, mul, [(1, 0), (0, 1)], f"Dic{4 * m}")


def semidirect_cyclic(m: int, k: int, r: int) -> FiniteGroupTable:
    """``C_m x| C_k`` with the generator of ``C_k`` acting by ``x -> r x``."""
    if pow(r, k, m) != 1 % m:
        raise ValueError("r^k must be 1 mod m")
    elements = [(i, j) for j in range(k) for i in range(m)]

    def mul(p, q):
        i, j = p
        a, b = q
        return ((i + pow(r, j, m) * a) % m, (j + b) % k)

    return FiniteGroupTable.from_table(elements, mul, [(1, 0), (0, 1)], f"C{m}:C{k}[{r}]")


def heisenberg_group(p: int) -> FiniteGroupTable:
    elements = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return FiniteGroupTable.from_table(elements, mul, [(1, 0, 0), (0, 1, 0)], f"Heis{p}")


def direct_product(A: FiniteGroupTable, B: FiniteGroupTable) -> FiniteGroupTable:
    na, nb = A.n, B.n
    gens = [tuple(g) + tuple(na + i for i in range(nb)) for g in A.gens]
    gens += [tuple(range(na)) + tuple(na + x for x in g) for g in B.gens]
    return FiniteGroupTable(gens, f"{A.name}x{B.name}")


def group_library() -> List[FiniteGroupTable]:
    """At least fifty small groups, abelian and not."""
    lib = [cyclic_group(m) for m in range(1, 13)]
    lib += [dihedral_group(m) for m in range(3, 13)]
    lib += [dicyclic_group(m) for m in range(2, 7)]
    lib += [symmetric_group(3), symmetric_group(4), alternating_group(4), alternating_group(5)]
    lib += [semidirect_cyclic(7, 3, 2), semidirect_cyclic(9, 3, 4), semidirect_cyclic(5, 4, 2),
            semidirect_cyclic(13, 3, 3), semidirect_cyclic(8, 2, 5), semidirect_cyclic(8, 2, 3),
            semidirect_cyclic(16, 2, 9), semidirect_cyclic(16, 2, 7)]
    lib += [heisenberg_group(3), heisenberg_group(5)]
    lib += [direct_product(cyclic_group(2), cyclic_group(2)),
            direct_product(cyclic_group(2), cyclic_group(4)),
            direct_product(cyclic_group(3), cyclic_group(3)),
            direct_product(cyclic_group(2), symmetric_group(3)),
            direct_product(cyclic_group(2), dicyclic_group(2)),
            direct_product(cyclic_group(3), symmetric_group(3)),
            direct_product(cyclic_group(2), dihedral_group(4)),
            direct_product(cyclic_group(2), alternating_group(4)),
            direct_product(symmetric_group(3), symmetric_group(3)),
            direct_product(cyclic_group(4), cyclic_group(4))]
    return lib
