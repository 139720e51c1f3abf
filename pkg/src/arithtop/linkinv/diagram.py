"""Planar diagram codes and Wirtinger presentations.

Conventions (see docs/FORMATS.md):

* Labels name the edges of the diagram between consecutive crossings.
* A crossing ``(a, b, c, d)`` lists its four edges counterclockwise,
  starting from the incoming under-strand; the under-strand runs ``a -> c``.
* The crossing is positive when the over-strand runs ``d -> b`` and negative
  when it runs ``b -> d`` (right-hand rule).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from ..words import FreeGroup, FreeWord

Crossing = Tuple[int, int, int, int]


class DiagramError(ValueError):
    pass


@dataclass
class PDCode:
    crossings: List[Crossing]
    signs: List[int]
    loops: int = 0  # crossingless unknotted components

    def __post_init__(self):
        self.crossings = [tuple(int(v) for v in c) for c in self.crossings]
        self.signs = [int(s) for s in self.signs]
        if len(self.signs) != len(self.crossings):
            raise DiagramError("need one sign per crossing")
        for c in self.crossings:
            if len(c) != 4:
                raise DiagramError(f"crossing {c} does not have four labels")
        for s in self.signs:
            if s not in (1, -1):
                raise DiagramError(f"crossing sign must be +1 or -1, got {s}")
        validate_pd(self)

    def labels(self) -> List[int]:
        return sorted({v for c in self.crossings for v in c})

    def successor(self) -> Dict[int, int]:
        """Edge that follows each edge along the orientation."""
        nxt: Dict[int, int] = {}
        for (a, b, c, d), s in zip(self.crossings, self.signs):
            nxt[a] = c
            if s > 0:
                nxt[d] = b
            else:
                nxt[b] = d
        return nxt

    def components(self) -> List[List[int]]:
        """Edge cycles, each starting at its smallest label, sorted by that label."""
        nxt = self.successor()
        seen = set()
        comps = []
        for start in sorted(nxt):
            if start in seen:
                continue
            cyc = []
            e = start
            while e not in seen:
                seen.add(e)
                cyc.append(e)
                e = nxt[e]
            comps.append(cyc)
        return comps

    def n_components(self) -> int:
        return len(self.components()) + self.loops

    def to_json(self) -> dict:
        out: dict = {"pd": [list(c) for c in self.crossings], "signs": list(self.signs)}
        if self.loops:
            out["loops"] = self.loops
        return out

    def to_text(self) -> str:
        lines = [f"X[{a},{b},{c},{d}] {'+' if s > 0 else '-'}" for (a, b, c, d), s in zip(self.crossings, self.signs)]
        lines += ["O"] * self.loops
        return "\n".join(lines) + "\n"


def validate_pd(pd: PDCode) -> None:
    """Every edge must be entered once and left once."""
    ins: Dict[int, int] = {}
    outs: Dict[int, int] = {}
    for k, ((a, b, c, d), s) in enumerate(zip(pd.crossings, pd.signs)):
        incoming = [a, d] if s > 0 else [a, b]
        outgoing = [c, b] if s > 0 else [c, d]
        for e in incoming:
            ins[e] = ins.get(e, 0) + 1
        for e in outgoing:
            outs[e] = outs.get(e, 0) + 1
    labels = set(ins) | set(outs)
    for e in sorted(labels):
        if ins.get(e, 0) != 1 or outs.get(e, 0) != 1:
            raise DiagramError(
                f"edge {e} enters {ins.get(e, 0)} and leaves {outs.get(e, 0)} crossings; "
                "labels or signs are inconsistent"
            )


def infer_signs(crossings: Sequence[Sequence[int]]) -> List[int]:
    """Crossing signs from edge orientations forced by the under-strands.

    An edge leaves the crossing where it is ``c`` and enters where it is ``a``.
    Over-strand edges inherit the opposite role at their other end.  Cycles
    that never pass under anything are oriented toward increasing labels.
    """
    cr = [tuple(c) for c in crossings]
    occ: Dict[int, List[Tuple[int, int]]] = {}
    for k, c in enumerate(cr):
        for pos, e in enumerate(c):
            occ.setdefault(e, []).append((k, pos))
    for e, places in occ.items():
        if len(places) != 2:
            raise DiagramError(f"edge {e} occurs {len(places)} times")
    role: Dict[Tuple[int, int], str] = {}
    for k, (a, b, c, d) in enumerate(cr):
        role[(k, 0)] = "in"
        role[(k, 2)] = "out"

    def other(e: int, place: Tuple[int, int]) -> Tuple[int, int]:
        p, q = occ[e]
        if p == q:
            raise DiagramError(f"edge {e} appears twice in one crossing")
        return q if p == place else p

    changed = True
    while True:
        while changed:
            changed = False
            for k, c in enumerate(cr):
                for pos in range(4):
                    if (k, pos) in role:
                        o = other(c[pos], (k, pos))
                        want = "out" if role[(k, pos)] == "in" else "in"
                        if o in role:
                            if role[o] != want:
                                raise DiagramError(f"edge {c[pos]} has inconsistent orientation")
                        else:
                            role[o] = want
                            changed = True
                for p, q in ((1, 3), (3, 1)):
                    if (k, p) in role and (k, q) not in role:
                        role[(k, q)] = "out" if role[(k, p)] == "in" else "in"
                        changed = True
        missing = [(k, pos) for k in range(len(cr)) for pos in (1, 3) if (k, pos) not in role]
        if not missing:
            break
        k, _ = min(missing, key=lambda kp: min(cr[kp[0]][1], cr[kp[0]][3]))
        b, d = cr[k][1], cr[k][3]
        if d < b:
            role[(k, 3)], role[(k, 1)] = "in", "out"
        else:
            role[(k, 1)], role[(k, 3)] = "in", "out"
        changed = True
    return [1 if role[(k, 1)] == "out" else -1 for k in range(len(cr))]


_X_LINE = re.compile(r"^X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*([+-]|\+1|-1)?\s*$")


def parse_pd_text(text: str) -> PDCode:
    """Lines ``X[a,b,c,d] +`` or ``X[a,b,c,d] -``.  A bare ``O`` line adds a
    crossingless component; ``#`` starts a comment.  Missing signs are
    inferred from the edge orientations."""
    crossings, signs = [], []
    loops = 0
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "O":
            loops += 1
            continue
        m = _X_LINE.match(line)
        if m is None:
            raise DiagramError(f"cannot parse PD line {raw!r}")
        crossings.append(tuple(int(m.group(k)) for k in range(1, 5)))
        s = m.group(5)
        signs.append(None if s is None else (1 if s.startswith("+") else -1))
    if any(s is None for s in signs):
        inferred = infer_signs(crossings)
        signs = [inferred[k] if s is None else s for k, s in enumerate(signs)]
    return PDCode(crossings, signs, loops)


def pd_from_json(obj: dict) -> PDCode:
    crossings = obj["pd"]
    signs = obj.get("signs")
    if signs is None:
        signs = infer_signs(crossings)
    return PDCode(crossings, signs, int(obj.get("loops", 0)))


def braid_to_pd(word: Sequence[int], strands: int) -> PDCode:
    """PD code of the closure of a braid word (``k`` for sigma_k, ``-k`` for
    its inverse).  Strands run upward; sigma_k is a positive crossing."""
    if strands < 1:
        raise DiagramError("need at least one strand")
    bottom = list(range(1, strands + 1))
    current = bottom[:]
    next_label = strands + 1
    raw: List[Tuple[List[int], int]] = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise DiagramError(f"generator {g} needs more than {strands} strands")
        bl, br = current[i], current[i + 1]
        tl, tr = next_label, next_label + 1
        next_label += 2
        if g > 0:
            raw.append(([br, tr, tl, bl], 1))
        else:
            raw.append(([bl, br, tr, tl], -1))
        current[i], current[i + 1] = tl, tr
    # closing: the label at the top of position p is the bottom label of p
    rename = {top: bot for top, bot in zip(current, bottom)}
    crossings = [tuple(rename.get(v, v) for v in c) for c, _ in raw]
    signs = [s for _, s in raw]
    free = sum(1 for p in range(strands) if current[p] == bottom[p] and not any(bottom[p] in c for c in crossings))
    # compact relabelling along components
    pd = PDCode(crossings, signs, free) if crossings else PDCode([], [], strands)
    return relabel_consecutive(pd)


def relabel_consecutive(pd: PDCode) -> PDCode:
    """Renumber edges 1, 2, ... following each component in turn."""
    mapping: Dict[int, int] = {}
    k = 1
    for comp in pd.components():
        for e in comp:
            mapping[e] = k
            k += 1
    crossings = [tuple(mapping[v] for v in c) for c in pd.crossings]
    return PDCode(crossings, list(pd.signs), pd.loops)


@dataclass
class WirtingerPresentation:
    """Generators are arcs of the diagram (``x_1..x_g``), one relator per
    crossing reading ``x_out = x_over^eps x_in x_over^-eps``."""

    group: FreeGroup
    relators: List[FreeWord]
    component_of: List[int]  # arc index (1-based position) -> component (1-based)
    base_meridian: List[int]  # component -> arc generator index
    n_components: int
    # traversal data for longitudes: per component, list of
    # (arc before, over arc, sign, arc after) for each under-crossing
    under_passes: List[List[Tuple[int, int, int, int]]] = field(default_factory=list)
    self_writhe: List[int] = field(default_factory=list)

    @property
    def n_generators(self) -> int:
        return self.group.rank


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def pd_to_wirtinger(pd: PDCode) -> WirtingerPresentation:
    labels = pd.labels()
    uf = _UnionFind(labels)
    for a, b, c, d in pd.crossings:
        uf.union(b, d)
    comps = pd.components()
    comp_of_edge = {e: k for k, comp in enumerate(comps, start=1) for e in comp}
    # arcs ordered by component, then by position of their first edge along it
    arc_index: Dict[int, int] = {}
    for comp in comps:
        for e in comp:
            root = uf.find(e)
            if root not in arc_index:
                arc_index[root] = len(arc_index) + 1
    n_arcs = len(arc_index) + pd.loops
    group = FreeGroup(n_arcs)
    arc = {e: arc_index[uf.find(e)] for e in labels}
    component_of = [0] * n_arcs
    for e in labels:
        component_of[arc[e] - 1] = comp_of_edge[e]
    n_comp = len(comps) + pd.loops
    for k in range(pd.loops):
        component_of[len(arc_index) + k] = len(comps) + k + 1

    relators = []
    for (a, b, c, d), s in zip(pd.crossings, pd.signs):
        xa, xc, xo = arc[a], arc[c], arc[b]
        conj = group.word([xo * s, xa, -xo * s])
        relators.append(group.word([xc]) * ~conj)

    base = [arc[comp[0]] for comp in comps] + [len(arc_index) + k + 1 for k in range(pd.loops)]

    at_under: Dict[int, Tuple[int, int]] = {}
    for k, ((a, b, c, d), s) in enumerate(zip(pd.crossings, pd.signs)):
        at_under[a] = (k, s)
    under_passes: List[List[Tuple[int, int, int, int]]] = []
    writhe: List[int] = []
    for ci, comp in enumerate(comps, start=1):
        passes = []
        w = 0
        for e in comp:
            if e in at_under:
                k, s = at_under[e]
                a, b, c, d = pd.crossings[k]
                passes.append((arc[e], arc[b], s, arc[c]))
                if comp_of_edge[b] == ci:
                    w += s
        under_passes.append(passes)
        writhe.append(w)
    for _ in range(pd.loops):
        under_passes.append([])
        writhe.append(0)
    return WirtingerPresentation(group, relators, component_of, base, n_comp, under_passes, writhe)


def load_link_file(path: str):
    """Read a link from JSON (longitudes or PD) or PD text; returns either a
    :class:`PDCode` or a ``(n, longitude strings)`` pair."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        obj = json.loads(text)
        if "pd" in obj:
            return pd_from_json(obj)
        if "braid" in obj:
            return braid_to_pd(obj["braid"], int(obj["strands"]))
        if "longitudes" in obj:
            return int(obj["n"]), list(obj["longitudes"])
        raise DiagramError("link JSON needs 'pd', 'braid' or 'longitudes'")
    return parse_pd_text(text)
