"""Permutations, signed permutations, reflections and the absolute order.

Elements are stored as image tuples and multiply right to left, so
``(v * w)(x) == v(w(x))``. Signed permutations keep only the images of
``1..n``; images of negative points follow from ``w(-i) == -w(i)``.

Type A is parametrised by the number of points ``n`` (the group ``S_n`` of
rank ``n - 1``). Types B and D are parametrised by their rank ``n``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache, reduce
from math import lcm
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from utils.errors import DomainError

logger = logging.getLogger(__name__)

COX_TYPES: Tuple[str, ...] = ("A", "B", "D")

# smallest parameter for which each family is set up
MIN_N: Dict[str, int] = {"A": 1, "B": 1, "D": 2}


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..n}`` stored by its images."""

    image: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(1, len(self.image) + 1)):
            raise DomainError(f"not a permutation of 1..{len(self.image)}: {self.image}")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if type(other) is not type(self) or other.n != self.n:
            raise DomainError(f"cannot multiply {type(self).__name__}({self.n}) by {type(other).__name__}({other.n})")
        return type(self)(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, value in enumerate(self.image, start=1):
            inv[value - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(value == i for i, value in enumerate(self.image, start=1))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True)
class SignedPermutation(Permutation):
    """Bijection of ``{±1..±n}`` commuting with ``x -> -x``."""

    def __post_init__(self) -> None:
        if sorted(abs(v) for v in self.image) != list(range(1, len(self.image) + 1)):
            raise DomainError(f"not a signed permutation of ±1..±{len(self.image)}: {self.image}")

    def __call__(self, x: int) -> int:
        if x > 0:
            return self.image[x - 1]
        return -self.image[-x - 1]

    def inverse(self) -> "SignedPermutation":
        inv = [0] * self.n
        for i, value in enumerate(self.image, start=1):
            inv[abs(value) - 1] = i if value > 0 else -i
        return SignedPermutation(tuple(inv))

    @property
    def sign_changes(self) -> int:
        return sum(1 for v in self.image if v < 0)


Element = Union[Permutation, SignedPermutation]


class CycleKind(str, Enum):
    UNSIGNED = "unsigned"
    PAIRED = "paired"
    BALANCED = "balanced"


@dataclass(frozen=True)
class Cycle:
    """A cycle in canonical form; build it with ``Cycle.make``."""

    kind: CycleKind
    entries: Tuple[int, ...]

    @classmethod
    def make(cls, kind: CycleKind, entries: Sequence[int]) -> "Cycle":
        entries = tuple(int(e) for e in entries)
        if not entries or 0 in entries:
            raise DomainError(f"bad cycle entries {entries}")
        if len({abs(e) for e in entries}) != len(entries):
            raise DomainError(f"cycle entries must have distinct absolute values: {entries}")
        kind = CycleKind(kind)
        if kind is CycleKind.UNSIGNED:
            if min(entries) < 0:
                raise DomainError(f"unsigned cycle with negative entry: {entries}")
            start = entries.index(min(entries))
            return cls(kind, entries[start:] + entries[:start])
        if kind is CycleKind.PAIRED:
            pivot = min(entries, key=abs)
            if pivot < 0:
                entries = tuple(-e for e in entries)
                pivot = -pivot
            start = entries.index(pivot)
            return cls(kind, entries[start:] + entries[:start])
        full = entries + tuple(-e for e in entries)
        pivot = min(abs(e) for e in entries)
        start = full.index(pivot)
        return cls(kind, (full[start:] + full[:start])[: len(entries)])

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def support(self) -> frozenset:
        return frozenset(abs(e) for e in self.entries)

    def mapping(self) -> Dict[int, int]:
        """Point map of the cycle on the points it moves."""

        if self.kind is CycleKind.BALANCED:
            full = self.entries + tuple(-e for e in self.entries)
            return {full[i]: full[(i + 1) % len(full)] for i in range(len(full))}
        k = len(self.entries)
        moves = {self.entries[i]: self.entries[(i + 1) % k] for i in range(k)}
        if self.kind is CycleKind.PAIRED:
            moves.update({-a: -b for a, b in list(moves.items())})
        return moves

    def element(self, n: int) -> Element:
        if max(self.support) > n:
            raise DomainError(f"cycle {format_cycle(self)} does not fit on {n} points")
        moves = self.mapping()
        image = tuple(moves.get(i, i) for i in range(1, n + 1))
        if self.kind is CycleKind.UNSIGNED:
            return Permutation(image)
        return SignedPermutation(image)

    def __str__(self) -> str:
        return format_cycle(self)


def format_cycle(cycle: Cycle) -> str:
    body = " ".join(str(e) for e in cycle.entries)
    if cycle.kind is CycleKind.PAIRED:
        return f"(({body}))"
    if cycle.kind is CycleKind.BALANCED:
        return f"[{body}]"
    return f"({body})"


def format_element(w: Element) -> str:
    """Juxtaposed canonical cycles; the identity prints as ``()``."""

    cycles = disjoint_cycles(w)
    if not cycles:
        return "()"
    return "".join(format_cycle(c) for c in cycles)


def _normalize_type(cox_type: str) -> str:
    kind = str(cox_type).upper()
    if kind not in COX_TYPES:
        raise DomainError(f"unknown Coxeter type {cox_type!r}; expected one of {COX_TYPES}")
    return kind


def _check_n(cox_type: str, n: int) -> None:
    if n < MIN_N[cox_type]:
        raise DomainError(f"type {cox_type} needs n>={MIN_N[cox_type]}, got {n}")


def check_element(cox_type: str, w: Element) -> str:
    """Validate group membership and return the normalised type letter."""

    kind = _normalize_type(cox_type)
    if kind == "A":
        if isinstance(w, SignedPermutation):
            raise DomainError("type A expects an unsigned permutation")
        return kind
    if not isinstance(w, SignedPermutation):
        raise DomainError(f"type {kind} expects a signed permutation")
    if kind == "D" and w.sign_changes % 2:
        raise DomainError(f"{format_element(w)} has an odd number of sign changes and is not in W(D{w.n})")
    return kind


def identity(cox_type: str, n: int) -> Element:
    kind = _normalize_type(cox_type)
    if kind == "A":
        return Permutation.identity(n)
    return SignedPermutation.identity(n)


def disjoint_cycles(w: Element) -> Tuple[Cycle, ...]:
    """Non-trivial cycles of ``w`` in canonical form, ordered by smallest support point."""

    cycles: List[Cycle] = []
    seen = set()
    signed = isinstance(w, SignedPermutation)
    for i in range(1, w.n + 1):
        if i in seen:
            continue
        orbit = [i]
        x = w(i)
        while x != i and not (signed and x == -i):
            orbit.append(x)
            x = w(x)
        seen.update(abs(e) for e in orbit)
        if signed and x == -i:
            cycles.append(Cycle.make(CycleKind.BALANCED, orbit))
        elif len(orbit) > 1:
            kind = CycleKind.PAIRED if signed else CycleKind.UNSIGNED
            cycles.append(Cycle.make(kind, orbit))
    return tuple(sorted(cycles, key=lambda c: min(c.support)))


def _length(w: Element) -> int:
    total = 0
    for cycle in disjoint_cycles(w):
        if cycle.kind is CycleKind.BALANCED:
            total += len(cycle)
        else:
            total += len(cycle) - 1
    return total


def absolute_length(cox_type: str, w: Element) -> int:
    """Reflection length: paired or unsigned k-cycles count k-1, balanced k-cycles count k."""

    check_element(cox_type, w)
    return _length(w)


def absolute_le(cox_type: str, v: Element, w: Element) -> bool:
    """``v <= w`` in absolute order, i.e. ``l(w) = l(v) + l(v^-1 w)``."""

    check_element(cox_type, v)
    check_element(cox_type, w)
    if v.n != w.n:
        raise DomainError("elements live on different numbers of points")
    return _length(w) == _length(v) + _length(v.inverse() * w)


def conjugate(g: Element, w: Element) -> Element:
    return g * w * g.inverse()


def element_order(w: Element) -> int:
    lengths = []
    for cycle in disjoint_cycles(w):
        lengths.append(2 * len(cycle) if cycle.kind is CycleKind.BALANCED else len(cycle))
    return reduce(lcm, lengths, 1)


@lru_cache(maxsize=None)
def reflection_cycles(cox_type: str, n: int) -> Tuple[Cycle, ...]:
    kind = _normalize_type(cox_type)
    _check_n(kind, n)
    cycles: List[Cycle] = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if kind == "A":
                cycles.append(Cycle.make(CycleKind.UNSIGNED, (i, j)))
            else:
                cycles.append(Cycle.make(CycleKind.PAIRED, (i, j)))
                cycles.append(Cycle.make(CycleKind.PAIRED, (i, -j)))
        if kind == "B":
            cycles.append(Cycle.make(CycleKind.BALANCED, (i,)))
    return tuple(cycles)


@lru_cache(maxsize=None)
def reflections(cox_type: str, n: int) -> Tuple[Element, ...]:
    """All reflections of the group: n(n-1)/2 for A, n^2 for B, n(n-1) for D."""

    kind = _normalize_type(cox_type)
    return tuple(c.element(n) for c in reflection_cycles(kind, n))


def is_reflection(cox_type: str, w: Element) -> bool:
    return w in reflections(_normalize_type(cox_type), w.n)


@lru_cache(maxsize=None)
def simple_reflections(cox_type: str, n: int) -> Tuple[Element, ...]:
    kind = _normalize_type(cox_type)
    _check_n(kind, n)
    if kind == "A":
        return tuple(Cycle.make(CycleKind.UNSIGNED, (i, i + 1)).element(n) for i in range(1, n))
    gens = [Cycle.make(CycleKind.PAIRED, (i, i + 1)).element(n) for i in range(1, n)]
    if kind == "B":
        gens.append(Cycle.make(CycleKind.BALANCED, (n,)).element(n))
    else:
        gens.append(Cycle.make(CycleKind.PAIRED, (-(n - 1), n)).element(n))
    return tuple(gens)


@lru_cache(maxsize=None)
def coxeter_element(cox_type: str, n: int) -> Element:
    """The standard Coxeter element ``s_1 s_2 ... s_n``."""

    kind = _normalize_type(cox_type)
    _check_n(kind, n)
    if kind == "A":
        if n == 1:
            return Permutation.identity(1)
        return Cycle.make(CycleKind.UNSIGNED, range(1, n + 1)).element(n)
    if kind == "B":
        return Cycle.make(CycleKind.BALANCED, range(1, n + 1)).element(n)
    first = Cycle.make(CycleKind.BALANCED, range(1, n)).element(n)
    return first * Cycle.make(CycleKind.BALANCED, (n,)).element(n)


def coxeter_number(cox_type: str, n: int) -> int:
    kind = _normalize_type(cox_type)
    _check_n(kind, n)
    return {"A": n, "B": 2 * n, "D": 2 * (n - 1)}[kind]


def rank(cox_type: str, n: int) -> int:
    kind = _normalize_type(cox_type)
    return n - 1 if kind == "A" else n


def word_product(cox_type: str, n: int, letters: Iterable[Element]) -> Element:
    return reduce(lambda acc, t: acc * t, letters, identity(cox_type, n))


@dataclass(frozen=True)
class ReducedWord:
    """A reduced decomposition ``t_1 ... t_k`` into reflections."""

    cox_type: str
    n: int
    letters: Tuple[Element, ...]

    def __post_init__(self) -> None:
        for t in self.letters:
            if not is_reflection(self.cox_type, t):
                raise DomainError(f"{format_element(t)} is not a reflection of type {self.cox_type}{self.n}")
        if _length(self.product) != len(self.letters):
            raise DomainError(f"word {self} is not reduced")

    @property
    def product(self) -> Element:
        return word_product(self.cox_type, self.n, self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def prefixes(self) -> Tuple[Element, ...]:
        """Prefix products ``t_1``, ``t_1 t_2``, ..., excluding the empty and full word."""

        out: List[Element] = []
        acc = identity(self.cox_type, self.n)
        for t in self.letters[:-1]:
            acc = acc * t
            out.append(acc)
        return tuple(out)

    def __str__(self) -> str:
        return "".join(format_element(t) for t in self.letters) or "()"


def reduced_words(cox_type: str, w: Element) -> Tuple[ReducedWord, ...]:
    """All reduced decompositions of ``w``, built by prefix extension."""

    kind = check_element(cox_type, w)
    n = w.n
    refl = reflections(kind, n)
    memo: Dict[Element, List[Tuple[Element, ...]]] = {}

    def words(v: Element) -> List[Tuple[Element, ...]]:
        if v in memo:
            return memo[v]
        if v.is_identity():
            found: List[Tuple[Element, ...]] = [()]
        else:
            target = _length(v) - 1
            found = []
            for t in refl:
                rest = t * v
                if _length(rest) == target:
                    found.extend((t,) + tail for tail in words(rest))
        memo[v] = found
        return found

    result = tuple(ReducedWord(kind, n, letters) for letters in words(w))
    logger.debug("%d reduced words for %s in type %s%d", len(result), format_element(w), kind, n)
    return result


def hurwitz_shift(word: ReducedWord, i: int, direction: str) -> ReducedWord:
    """Apply the i-th (1-based) right- or left-shift of the Hurwitz action."""

    if not 1 <= i < len(word):
        raise DomainError(f"shift index {i} out of range for a word of length {len(word)}")
    letters = list(word.letters)
    a, b = letters[i - 1], letters[i]
    if direction == "right":
        letters[i - 1], letters[i] = a * b * a, a
    elif direction == "left":
        letters[i - 1], letters[i] = b, b * a * b
    else:
        raise DomainError(f"direction must be 'left' or 'right', got {direction!r}")
    return ReducedWord(word.cox_type, word.n, tuple(letters))


def inversion_number(sequence: Union[Element, Sequence[int]]) -> int:
    """Number of inversions; the Coxeter length of a one-line permutation."""

    values = sequence.image if isinstance(sequence, Permutation) else tuple(sequence)
    return sum(1 for a in range(len(values)) for b in range(a + 1, len(values)) if values[a] > values[b])
