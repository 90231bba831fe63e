"""Non-crossing partition lattices NC(A), NC(B) and NC(D).

Membership is decided from the cycle structure (consistent orientation plus
pairwise non-crossing blocks on the polygon picture). The polygon pictures
are:

* type A on ``n`` points: the n-gon labelled ``1..n`` clockwise;
* type B of rank ``n``: the 2n-gon labelled ``1..n, -1..-n`` clockwise;
* type D of rank ``n``: the 2(n-1)-gon labelled ``1..n-1, -1..-(n-1)``
  clockwise with ``±n`` placed at the midpoint.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from backend.perm import (
    Cycle,
    CycleKind,
    Element,
    Permutation,
    SignedPermutation,
    _length,
    _normalize_type,
    check_element,
    coxeter_element,
    disjoint_cycles,
    format_element,
    identity,
    reflections,
)
from utils.config import check_guard
from utils.errors import CrossingPartition, DomainError, VerificationError

logger = logging.getLogger(__name__)


# --------------------------------------------------------------------------
# partitions


def _sorted_blocks(blocks: Iterable[Iterable[int]]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: (b[0], b)))


@dataclass(frozen=True)
class SetPartition:
    """Partition of ``{1..n}``; blocks sorted, ordered by minimum."""

    n: int
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = _sorted_blocks(self.blocks)
        points = sorted(x for b in blocks for x in b)
        if points != list(range(1, self.n + 1)) or any(not b for b in blocks):
            raise DomainError(f"blocks {blocks} do not partition 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def rank(self) -> int:
        return self.n - len(self.blocks)

    def nontrivial_blocks(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(b for b in self.blocks if len(b) > 1)

    def block_of(self, x: int) -> Tuple[int, ...]:
        return next(b for b in self.blocks if x in b)

    def refines(self, other: "SetPartition") -> bool:
        return all(set(b) <= set(other.block_of(b[0])) for b in self.blocks)

    @classmethod
    def singletons(cls, n: int) -> "SetPartition":
        return cls(n, tuple((i,) for i in range(1, n + 1)))


@dataclass(frozen=True)
class BPartition:
    """Partition of ``{±1..±n}`` closed under negation with at most one zero block."""

    n: int
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = _sorted_blocks(self.blocks)
        points = sorted(x for b in blocks for x in b)
        expected = sorted(list(range(1, self.n + 1)) + list(range(-self.n, 0)))
        if points != expected or any(not b for b in blocks):
            raise DomainError(f"blocks {blocks} do not partition ±1..±{self.n}")
        as_sets = {frozenset(b) for b in blocks}
        for b in blocks:
            if frozenset(-x for x in b) not in as_sets:
                raise DomainError(f"block {set(b)} has no negative partner")
        if sum(1 for b in blocks if set(b) == {-x for x in b}) > 1:
            raise DomainError("more than one zero block")
        object.__setattr__(self, "blocks", blocks)
        self._validate_zero_block()

    def _validate_zero_block(self) -> None:
        pass

    @property
    def zero_block(self) -> Optional[Tuple[int, ...]]:
        for b in self.blocks:
            if set(b) == {-x for x in b}:
                return b
        return None

    @property
    def rank(self) -> int:
        return self.n - len(self.blocks) // 2

    def block_of(self, x: int) -> Tuple[int, ...]:
        return next(b for b in self.blocks if x in b)

    def refines(self, other: "BPartition") -> bool:
        return all(set(b) <= set(other.block_of(b[0])) for b in self.blocks)

    @classmethod
    def singletons(cls, n: int) -> "BPartition":
        return cls(n, tuple((i,) for i in range(1, n + 1)) + tuple((-i,) for i in range(1, n + 1)))


@dataclass(frozen=True)
class DPartition(BPartition):
    """Pure D-partition: a zero block, if present, contains ``±n`` and has at least four points."""

    def _validate_zero_block(self) -> None:
        zero = self.zero_block
        if zero is not None and (self.n not in zero or len(zero) < 4):
            raise DomainError(f"zero block {set(zero)} of a D{self.n}-partition must contain ±{self.n} and 4+ points")


Partition = Union[SetPartition, BPartition, DPartition]


# --------------------------------------------------------------------------
# polygon geometry


def polygon_position(cox_type: str, n: int) -> Callable[[int], int]:
    """Clockwise position of a point on the boundary polygon (D: ``±n`` excluded)."""

    kind = _normalize_type(cox_type)
    if kind == "A":
        return lambda x: x - 1
    m = n if kind == "B" else n - 1
    return lambda x: x - 1 if x > 0 else m - x - 1


def _crosses(first: Iterable[int], second: Iterable[int], position: Callable[[int], int]) -> bool:
    """Two disjoint point sets cross iff their labels alternate more than twice around the circle."""

    marks = sorted([(position(x), 0) for x in first] + [(position(x), 1) for x in second])
    labels = [m for _, m in marks]
    changes = sum(1 for k in range(len(labels)) if labels[k] != labels[k - 1])
    return changes > 2


def _is_clockwise(sequence: Sequence[int], position: Callable[[int], int]) -> bool:
    """A cyclic sequence is consistently oriented iff it increases from its minimal position."""

    pos = [position(x) for x in sequence]
    start = pos.index(min(pos))
    rotated = pos[start:] + pos[:start]
    return all(a < b for a, b in zip(rotated, rotated[1:]))


def _visible_blocks(cox_type: str, n: int, blocks: Iterable[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """Point sets drawn on the polygon; a D block through ``±n`` contributes its synthesized zero block."""

    if cox_type != "D":
        return [b for b in blocks if len(b) > 1]
    seen: List[Tuple[int, ...]] = []
    for b in blocks:
        if n in b or -n in b:
            rest = tuple(sorted({abs(x) for x in b if abs(x) != n} | {-abs(x) for x in b if abs(x) != n}))
            if rest and rest not in seen:
                seen.append(rest)
        elif len(b) > 1:
            seen.append(b)
    return seen


def crossing_pair(cox_type: str, partition: Partition) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """First pair of crossing blocks, or ``None`` when the partition is non-crossing."""

    kind = _normalize_type(cox_type)
    position = polygon_position(kind, partition.n)
    visible = _visible_blocks(kind, partition.n, partition.blocks)
    for a in range(len(visible)):
        for b in range(a + 1, len(visible)):
            if _crosses(visible[a], visible[b], position):
                return visible[a], visible[b]
    return None


def is_noncrossing(cox_type: str, partition: Partition) -> bool:
    return crossing_pair(cox_type, partition) is None


# --------------------------------------------------------------------------
# membership


def _orbits(w: Element) -> List[Tuple[int, ...]]:
    """Non-trivial orbits on points (signed: on ``±`` points), in cycle order."""

    out: List[Tuple[int, ...]] = []
    for cycle in disjoint_cycles(w):
        if cycle.kind is CycleKind.BALANCED:
            out.append(cycle.entries + tuple(-e for e in cycle.entries))
        elif cycle.kind is CycleKind.PAIRED:
            out.append(cycle.entries)
            out.append(tuple(-e for e in cycle.entries))
        else:
            out.append(cycle.entries)
    return out


def _oriented_through_midpoint(entries: Sequence[int], n: int) -> bool:
    """Orientation rule for a paired cycle through ``n`` written with ``n`` last."""

    rest = list(entries)
    if not rest:
        return True
    head = rest[0]
    sign = 1 if head > 0 else -1
    l = 0
    while l < len(rest) and rest[l] * sign > 0:
        l += 1
    lead, tail = rest[:l], rest[l:]
    if any(x * sign > 0 for x in tail):
        return False
    if sign > 0:
        ok = all(a < b for a, b in zip(lead, lead[1:])) and all(a > b for a, b in zip(tail, tail[1:]))
        return ok and (not tail or tail[-1] > -head)
    ok = all(a > b for a, b in zip(lead, lead[1:])) and all(a < b for a, b in zip(tail, tail[1:]))
    return ok and (not tail or tail[-1] < -head)


def _midpoint_representative(cycle: Cycle, n: int) -> Tuple[int, ...]:
    """Entries of a paired cycle through ``±n`` rewritten with ``+n`` last, ``n`` dropped."""

    entries = cycle.entries
    if -n in entries:
        entries = tuple(-e for e in entries)
    k = entries.index(n)
    rotated = entries[k + 1:] + entries[:k]
    return rotated


def nc_member(cox_type: str, w: Element) -> bool:
    """``w <= c`` decided by the cycle-structure criterion."""

    kind = check_element(cox_type, w)
    n = w.n
    if kind == "A":
        position = polygon_position("A", n)
        orbits = _orbits(w)
        if not all(_is_clockwise(o, position) for o in orbits):
            return False
        return not any(_crosses(orbits[a], orbits[b], position) for a in range(len(orbits)) for b in range(a + 1, len(orbits)))
    if kind == "B":
        position = polygon_position("B", n)
        orbits = _orbits(w)
        if not all(_is_clockwise(o, position) for o in orbits):
            return False
        return not any(_crosses(orbits[a], orbits[b], position) for a in range(len(orbits)) for b in range(a + 1, len(orbits)))
    return _nc_member_d(w)


def _nc_member_d(w: SignedPermutation) -> bool:
    n = w.n
    position = polygon_position("D", n)
    cycles = disjoint_cycles(w)
    balanced = [c for c in cycles if c.kind is CycleKind.BALANCED]
    if balanced:
        if len(balanced) != 2 or balanced[-1].entries != (n,):
            return False
    for cycle in cycles:
        if cycle.kind is CycleKind.BALANCED:
            if cycle.entries == (n,):
                continue
            if not _is_clockwise(cycle.entries + tuple(-e for e in cycle.entries), position):
                return False
        elif n in cycle.support:
            if not _oriented_through_midpoint(_midpoint_representative(cycle, n), n):
                return False
        else:
            negated = tuple(-e for e in cycle.entries)
            if not (_is_clockwise(cycle.entries, position) and _is_clockwise(negated, position)):
                return False
    return is_noncrossing("D", _partition_of(w))


def _below_c(kind: str, w: Element) -> bool:
    c = coxeter_element(kind, w.n)
    return _length(c) == _length(w) + _length(w.inverse() * c)


# --------------------------------------------------------------------------
# elements <-> partitions


def _partition_of(w: Element) -> Partition:
    if not isinstance(w, SignedPermutation):
        seen = set()
        blocks = []
        for i in range(1, w.n + 1):
            if i in seen:
                continue
            orbit = [i]
            x = w(i)
            while x != i:
                orbit.append(x)
                x = w(x)
            seen.update(orbit)
            blocks.append(tuple(orbit))
        return SetPartition(w.n, tuple(blocks))
    n = w.n
    blocks: List[Tuple[int, ...]] = []
    zero: List[int] = []
    moved = set()
    for cycle in disjoint_cycles(w):
        moved |= cycle.support
        if cycle.kind is CycleKind.BALANCED:
            zero.extend(cycle.entries)
            zero.extend(-e for e in cycle.entries)
        else:
            blocks.append(cycle.entries)
            blocks.append(tuple(-e for e in cycle.entries))
    if zero:
        blocks.append(tuple(zero))
    for i in range(1, n + 1):
        if i not in moved:
            blocks.extend([(i,), (-i,)])
    return BPartition(n, tuple(blocks))


def perm_to_partition(cox_type: str, w: Element) -> Partition:
    """Orbit partition of a non-crossing element."""

    kind = check_element(cox_type, w)
    if not nc_member(kind, w):
        raise DomainError(f"{format_element(w)} is not in NC({kind}{w.n})")
    partition = _partition_of(w)
    if kind == "D":
        return DPartition(partition.n, partition.blocks)
    return partition


def _cyclic_map(sequence: Sequence[int], moves: Dict[int, int]) -> None:
    for k, x in enumerate(sequence):
        moves[x] = sequence[(k + 1) % len(sequence)]


def partition_to_perm(cox_type: str, partition: Partition) -> Element:
    """Inverse of ``perm_to_partition``: each block read clockwise."""

    kind = _normalize_type(cox_type)
    n = partition.n
    if kind == "A" and not isinstance(partition, SetPartition):
        raise DomainError("type A needs a set partition")
    if kind != "A" and not isinstance(partition, BPartition):
        raise DomainError(f"type {kind} needs a signed partition")
    if kind == "D" and not isinstance(partition, DPartition):
        partition = DPartition(partition.n, partition.blocks)
    pair = crossing_pair(kind, partition)
    if pair is not None:
        raise CrossingPartition(*pair)
    position = polygon_position(kind, n)
    moves: Dict[int, int] = {}
    if kind == "A":
        for block in partition.blocks:
            _cyclic_map(sorted(block, key=position), moves)
        return Permutation(tuple(moves.get(i, i) for i in range(1, n + 1)))
    for block in partition.blocks:
        if kind == "D" and (n in block or -n in block):
            _map_midpoint_block(block, n, position, moves)
        else:
            _cyclic_map(sorted(block, key=position), moves)
    w = SignedPermutation(tuple(moves.get(i, i) for i in range(1, n + 1)))
    if kind == "D" and not nc_member("D", w):  # pragma: no cover
        raise VerificationError(f"partition {partition.blocks} produced {format_element(w)} outside NC(D{n})")
    return w


def _map_midpoint_block(block: Sequence[int], n: int, position: Callable[[int], int], moves: Dict[int, int]) -> None:
    if set(block) == {-x for x in block}:
        rest = sorted((x for x in block if abs(x) != n), key=position)
        _cyclic_map(rest, moves)
        moves[n], moves[-n] = -n, n
        return
    if -n in block:
        return
    rest = sorted((x for x in block if x != n), key=position)
    if not rest:
        return
    for k in range(len(rest)):
        candidate = rest[k:] + rest[:k]
        if _oriented_through_midpoint(candidate, n):
            _cyclic_map(candidate + [n], moves)
            _cyclic_map([-x for x in candidate] + [-n], moves)
            return
    raise VerificationError(f"no consistent orientation for block {set(block)}")  # pragma: no cover


# --------------------------------------------------------------------------
# enumeration, covers, Kreweras


def nc_count(cox_type: str, n: int) -> int:
    """Closed-form cardinality of NC for the type (type A: Catalan number of ``n`` points)."""

    kind = _normalize_type(cox_type)
    if kind == "A":
        return catalan(n)
    if kind == "B":
        return comb(2 * n, n)
    return (3 * n - 2) * comb(2 * n - 2, n - 1) // n


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def narayana(n: int, k: int) -> int:
    """``N(n, k) = binom(n, k) binom(n, k-1) / n``; NCP_n has ``N(n, n-r)`` elements of rank r."""

    if n == 0:
        return 1 if k == 0 else 0
    return comb(n, k) * comb(n, k - 1) // n


def element_key(w: Element) -> Tuple[int, Tuple[int, ...]]:
    return _length(w), w.image


@lru_cache(maxsize=None)
def _enumerate(kind: str, n: int) -> Tuple[Tuple[Element, ...], ...]:
    refl = reflections(kind, n)
    c = coxeter_element(kind, n)
    levels: List[Tuple[Element, ...]] = [(identity(kind, n),)]
    for r in range(1, _length(c) + 1):
        found = set()
        for w in levels[-1]:
            for t in refl:
                u = w * t
                if _length(u) == r and u not in found and _below_c(kind, u):
                    found.add(u)
        levels.append(tuple(sorted(found, key=element_key)))
    logger.debug("NC(%s%d): %d elements", kind, n, sum(len(level) for level in levels))
    return tuple(levels)


def nc_enumerate(cox_type: str, n: int) -> Dict[int, Tuple[Element, ...]]:
    """All elements of NC grouped by rank."""

    kind = _normalize_type(cox_type)
    check_guard(f"nc_enumerate:{kind}", n)
    return dict(enumerate(_enumerate(kind, n)))


def nc_elements(cox_type: str, n: int) -> Tuple[Element, ...]:
    return tuple(w for level in nc_enumerate(cox_type, n).values() for w in level)


def _require_member(kind: str, w: Element) -> None:
    if not nc_member(kind, w):
        raise DomainError(f"{format_element(w)} is not in NC({kind}{w.n})")


def covers(cox_type: str, w: Element) -> Tuple[Tuple[Element, ...], Tuple[Element, ...]]:
    """``(cover set, covered set)`` of ``w`` inside NC."""

    kind = check_element(cox_type, w)
    _require_member(kind, w)
    lw = _length(w)
    up, down = set(), set()
    for t in reflections(kind, w.n):
        u = w * t
        lu = _length(u)
        if lu == lw + 1 and _below_c(kind, u):
            up.add(u)
        elif lu == lw - 1:
            down.add(u)
    return tuple(sorted(up, key=element_key)), tuple(sorted(down, key=element_key))


def kreweras(cox_type: str, w: Element) -> Element:
    """``w -> w^-1 c``, the order-reversing bijection of NC."""

    kind = check_element(cox_type, w)
    _require_member(kind, w)
    return w.inverse() * coxeter_element(kind, w.n)


def hasse_graph(cox_type: str, n: int) -> nx.DiGraph:
    """Cover relations of NC as a directed graph (edges point upwards), nodes carry ``rank``."""

    kind = _normalize_type(cox_type)
    graph = nx.DiGraph()
    for r, level in nc_enumerate(kind, n).items():
        for w in level:
            graph.add_node(w, rank=r)
    for w in graph.nodes:
        for u in covers(kind, w)[0]:
            graph.add_edge(w, u)
    return graph


# --------------------------------------------------------------------------
# lattice operations


def _union_find_join(n_points: Sequence[int], blocks: Iterable[Iterable[int]]) -> List[FrozenSet[int]]:
    graph = nx.Graph()
    graph.add_nodes_from(n_points)
    for block in blocks:
        block = list(block)
        graph.add_edges_from(zip(block, block[1:]))
    return [frozenset(c) for c in nx.connected_components(graph)]


def _merge_crossing(parts: List[FrozenSet[int]], position: Callable[[int], int]) -> List[FrozenSet[int]]:
    merged = True
    while merged:
        merged = False
        for a in range(len(parts)):
            for b in range(a + 1, len(parts)):
                if _crosses(parts[a], parts[b], position):
                    parts[a] = parts[a] | parts[b]
                    del parts[b]
                    merged = True
                    break
            if merged:
                break
    return parts


def _set_join(points: Sequence[int], p1: Iterable[Iterable[int]], p2: Iterable[Iterable[int]], position) -> List[FrozenSet[int]]:
    return _merge_crossing(_union_find_join(points, list(p1) + list(p2)), position)


def _set_meet(p1: Iterable[Iterable[int]], p2: Iterable[Iterable[int]]) -> List[FrozenSet[int]]:
    return [frozenset(a) & frozenset(b) for a in p1 for b in p2 if frozenset(a) & frozenset(b)]


def _bound_search(kind: str, n: int, v: Element, w: Element, upper: bool) -> Element:
    """Least upper (or greatest lower) bound by exhaustive search over NC."""

    def le(a: Element, b: Element) -> bool:
        return _length(b) == _length(a) + _length(a.inverse() * b)

    elements = nc_elements(kind, n)
    if upper:
        bounds = [u for u in elements if le(v, u) and le(w, u)]
        best = min(bounds, key=element_key)
        ok = all(le(best, u) for u in bounds)
    else:
        bounds = [u for u in elements if le(u, v) and le(u, w)]
        best = max(bounds, key=element_key)
        ok = all(le(u, best) for u in bounds)
    if not ok:  # pragma: no cover
        raise VerificationError(f"no unique bound for {format_element(v)}, {format_element(w)}")
    return best


def join(cox_type: str, first: Partition, second: Partition) -> Partition:
    return _lattice_op(cox_type, first, second, upper=True)


def meet(cox_type: str, first: Partition, second: Partition) -> Partition:
    return _lattice_op(cox_type, first, second, upper=False)


def _lattice_op(cox_type: str, first: Partition, second: Partition, upper: bool) -> Partition:
    kind = _normalize_type(cox_type)
    if first.n != second.n:
        raise DomainError("partitions of different sizes")
    n = first.n
    for p in (first, second):
        pair = crossing_pair(kind, p)
        if pair is not None:
            raise CrossingPartition(*pair)
    if kind == "D":
        v, w = partition_to_perm(kind, first), partition_to_perm(kind, second)
        return perm_to_partition(kind, _bound_search(kind, n, v, w, upper))
    position = polygon_position(kind, n)
    points = list(range(1, n + 1)) if kind == "A" else list(range(1, n + 1)) + list(range(-n, 0))
    if upper:
        parts = _set_join(points, first.blocks, second.blocks, position)
    else:
        parts = _set_meet(first.blocks, second.blocks)
    return (SetPartition if kind == "A" else BPartition)(n, tuple(tuple(p) for p in parts))


def element_join(cox_type: str, v: Element, w: Element) -> Element:
    kind = _normalize_type(cox_type)
    return partition_to_perm(kind, join(kind, perm_to_partition(kind, v), perm_to_partition(kind, w)))


def element_meet(cox_type: str, v: Element, w: Element) -> Element:
    kind = _normalize_type(cox_type)
    return partition_to_perm(kind, meet(kind, perm_to_partition(kind, v), perm_to_partition(kind, w)))


# --------------------------------------------------------------------------
# rank-1 and rank-2 types


def rank1_type(cox_type: str, n: int, t: Element) -> int:
    """How diagonal the edge of a reflection lies; ``-1`` for a balanced reflection in type B."""

    kind = _normalize_type(cox_type)
    (cycle,) = disjoint_cycles(t)
    if cycle.kind is CycleKind.BALANCED:
        return -1
    i, j = cycle.entries
    if kind == "D" and n in cycle.support:
        return n
    m = n if kind == "B" else n - 1
    if j > 0:
        return j - i + 1
    return m + i + j + 1


def rank2_class(cox_type: str, n: int, x: Element) -> int:
    """Shape class of a rank-2 element (the number of drawn blocks, up to sign)."""

    kind = _normalize_type(cox_type)
    cycles = disjoint_cycles(x)
    kinds = sorted(c.kind.value for c in cycles)
    if kind == "B":
        if kinds == ["balanced"]:
            return 1
        if kinds == ["paired"]:
            return 2
        if kinds == ["balanced", "paired"]:
            return 3
        return 4
    if kinds == ["balanced", "balanced"]:
        return -1
    if kinds == ["paired"]:
        return 1 if n in cycles[0].support else 2
    return 4 if any(n in c.support for c in cycles) else 3
