"""Reduced words in a free group of finite rank and the integral group ring.

A letter is a nonzero signed integer: ``k`` stands for ``x_k`` and ``-k`` for
``x_k^-1``.  Words always carry the :class:`FreeGroup` they belong to so that
words of different rank never mix silently.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Letter = int
RawLetter = Union[int, Tuple[int, int]]

_TOKEN = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


class RankError(ValueError):
    """Raised when words from free groups of different rank are combined."""


class WordSyntaxError(ValueError):
    pass


class FreeGroup:
    """Free group on ``x_1, ..., x_n``."""

    def __init__(self, rank: int):
        if rank < 0:
            raise ValueError(f"rank must be nonnegative, got {rank}")
        self.rank = rank

    def __repr__(self) -> str:
        return f"FreeGroup({self.rank})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeGroup) and other.rank == self.rank

    def __hash__(self) -> int:
        return hash(("FreeGroup", self.rank))

    def identity(self) -> "FreeWord":
        return FreeWord(self, ())

    def gen(self, i: int) -> "FreeWord":
        return self.word([i])

    def gens(self) -> list["FreeWord"]:
        return [self.gen(i) for i in range(1, self.rank + 1)]

    def word(self, raw: Iterable[RawLetter]) -> "FreeWord":
        """Build a word from letters given either as signed ints or
        ``(index, sign)`` pairs, freely reducing the result."""
        return reduce_word(self, raw)

    def parse(self, text: str) -> "FreeWord":
        return parse_word(self, text)


def _check_letter(group: FreeGroup, letter: int) -> None:
    if letter == 0 or abs(letter) > group.rank:
        raise IndexError(f"generator index {abs(letter)} out of range 1..{group.rank}")


def _free_reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


class FreeWord:
    """An element of a free group, stored as a freely reduced letter tuple.

    Use :meth:`FreeGroup.word` or :func:`reduce_word` to build words from
    arbitrary letter sequences; the constructor assumes reduced input.
    """

    __slots__ = ("group", "letters", "_hash")

    def __init__(self, group: FreeGroup, letters: Tuple[int, ...]):
        self.group = group
        self.letters = letters
        self._hash = hash((group.rank, letters))

    def __repr__(self) -> str:
        return f"FreeWord({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FreeWord)
            and self.group == other.group
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "FreeWord") -> bool:
        return (len(self.letters), self.letters) < (len(other.letters), other.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return multiply(self, other)

    def __invert__(self) -> "FreeWord":
        return invert(self)

    def __pow__(self, k: int) -> "FreeWord":
        base = self if k >= 0 else invert(self)
        out = self.group.identity()
        for _ in range(abs(k)):
            out = multiply(out, base)
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def pairs(self) -> list[Tuple[int, int]]:
        """Letters as ``(index, sign)`` pairs."""
        return [(abs(a), 1 if a > 0 else -1) for a in self.letters]

    def runs(self) -> list[Tuple[int, int]]:
        """Run-length form: ``(index, exponent)`` with nonzero exponents."""
        out: list[list[int]] = []
        for a in self.letters:
            i, s = abs(a), (1 if a > 0 else -1)
            if out and out[-1][0] == i:
                out[-1][1] += s
            else:
                out.append([i, s])
        return [(i, e) for i, e in out]

    def exponent_sum(self, i: int) -> int:
        return sum(1 if a > 0 else -1 for a in self.letters if abs(a) == i)


def reduce_word(group: FreeGroup, raw: Iterable[RawLetter]) -> FreeWord:
    letters = []
    for item in raw:
        if isinstance(item, tuple):
            idx, sign = item
            if sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {sign}")
            a = idx * sign
        else:
            a = int(item)
        _check_letter(group, a)
        letters.append(a)
    return FreeWord(group, _free_reduce(letters))


def _same_group(u: FreeWord, v: FreeWord) -> None:
    if u.group != v.group:
        raise RankError(f"cannot combine words of {u.group} and {v.group}")


def multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    _same_group(u, v)
    a, b = u.letters, v.letters
    k = 0
    while k < len(a) and k < len(b) and a[len(a) - 1 - k] == -b[k]:
        k += 1
    return FreeWord(u.group, a[: len(a) - k] + b[k:])


def invert(w: FreeWord) -> FreeWord:
    return FreeWord(w.group, tuple(-a for a in reversed(w.letters)))


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    """``u v u^-1 v^-1``"""
    _same_group(u, v)
    return reduce_word(u.group, u.letters + v.letters + invert(u).letters + invert(v).letters)


def conjugate(w: FreeWord, by: FreeWord) -> FreeWord:
    """``by w by^-1``"""
    return multiply(multiply(by, w), invert(by))


def parse_word(group: FreeGroup, text: str) -> FreeWord:
    """Parse whitespace separated tokens ``x<k>``, ``x<k>^-1`` or ``x<k>^<m>``.

    ``"1"`` and the empty string denote the identity.
    """
    letters: list[int] = []
    for token in text.split():
        if token == "1":
            continue
        m = _TOKEN.match(token)
        if m is None:
            raise WordSyntaxError(f"malformed token {token!r}")
        idx = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if idx == 0 or idx > group.rank:
            raise WordSyntaxError(f"unknown generator x{idx} (rank {group.rank})")
        letters.extend([idx if exp > 0 else -idx] * abs(exp))
    return FreeWord(group, _free_reduce(letters))


def format_word(w: FreeWord) -> str:
    """Inverse of :func:`parse_word`; runs are written with exponents."""
    if not w.letters:
        return "1"
    parts = []
    for i, e in w.runs():
        parts.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    return " ".join(parts)


class GroupRingElt:
    """Finite integral combination of free-group words."""

    __slots__ = ("group", "terms")

    def __init__(self, group: FreeGroup, terms: Mapping[FreeWord, int] | None = None):
        self.group = group
        clean: Dict[FreeWord, int] = {}
        for w, c in (terms or {}).items():
            if w.group != group:
                raise RankError(f"word of {w.group} in group ring of {group}")
            if c:
                clean[w] = clean.get(w, 0) + c
                if not clean[w]:
                    del clean[w]
        self.terms = clean

    @classmethod
    def from_word(cls, w: FreeWord, coeff: int = 1) -> "GroupRingElt":
        return cls(w.group, {w: coeff})

    def __repr__(self) -> str:
        if not self.terms:
            return "GroupRingElt(0)"
        body = " + ".join(f"{c}*[{w}]" for w, c in sorted(self.terms.items(), key=lambda t: t[0]))
        return f"GroupRingElt({body})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupRingElt) and self.group == other.group and self.terms == other.terms

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElt(self.group, out)

    def __neg__(self) -> "GroupRingElt":
        return GroupRingElt(self.group, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElt") -> "GroupRingElt":
        return self + (-other)

    def __mul__(self, other: "GroupRingElt") -> "GroupRingElt":
        out: Dict[FreeWord, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = multiply(u, v)
                out[w] = out.get(w, 0) + a * b
        return GroupRingElt(self.group, out)

    def left_mul(self, w: FreeWord) -> "GroupRingElt":
        out: Dict[FreeWord, int] = {}
        for u, c in self.terms.items():
            uw = multiply(w, u)
            out[uw] = out.get(uw, 0) + c
        return GroupRingElt(self.group, out)

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms
