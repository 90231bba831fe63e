"""The building of F_2^(n-1) and its subcomplexes |P_n| and |NCP_n|.

A chamber is a complete flag ``C_1 < ... < C_{n-2}`` of proper non-zero
subspaces of ``F_2^{n-1}``. A subspace is a vertex of |P_n| when it is the
span of the edge vectors of some set partition, and of |NCP_n| when that
partition is non-crossing. All three complexes are flag complexes of their
vertex posets, so a chamber lies in a subcomplex iff all its vertices do.

Apartments are frames (unordered bases of lines). Inside |P_n| and |NCP_n|
they come from spanning trees, resp. non-crossing spanning trees.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import pandas as pd

from backend.linalg import (
    Subspace,
    edge_bits,
    embed_nc,
    embed_partition,
    f2_contains,
    f2_intersect,
    f2_span,
    f2_sum,
    nullspace,
    span,
)
from backend.metric import edge_length
from backend.ncp import SetPartition, is_noncrossing, nc_elements, partition_to_perm
from backend.perm import (
    Element,
    Permutation,
    ReducedWord,
    _normalize_type,
    coxeter_element,
    format_element,
    rank,
    reduced_words,
)
from backend.trees import Edge, Forest, enumerate_spanning_trees, word_to_tree
from utils.config import check_guard
from utils.errors import DomainError, VerificationError

logger = logging.getLogger(__name__)

Bits = Tuple[int, ...]


class SubcomplexTag(str, Enum):
    BUILDING = "BUILDING"
    PN = "PN"
    NCP = "NCP"


def as_tag(tag) -> SubcomplexTag:
    try:
        return SubcomplexTag(str(getattr(tag, "value", tag)).upper())
    except ValueError:
        raise DomainError(f"unknown subcomplex {tag!r}; expected BUILDING, PN or NCP") from None


# --------------------------------------------------------------------------
# vertices


def _check_n(n: int) -> None:
    if n < 2:
        raise DomainError(f"the complex needs n>=2 points, got {n}")


@lru_cache(maxsize=None)
def _partition_of_bits(n: int, rows: Bits) -> Optional[SetPartition]:
    graph = nx.Graph()
    graph.add_nodes_from(range(1, n + 1))
    graph.add_edges_from(
        (i, j) for i, j in combinations(range(1, n + 1), 2) if f2_contains(rows, edge_bits(i, j, n))
    )
    blocks = tuple(tuple(c) for c in nx.connected_components(graph))
    if n - len(blocks) != len(rows):
        return None
    return SetPartition(n, blocks)


def _check_vertex(U: Subspace, n: int) -> None:
    if U.p != 2 or U.m != n - 1:
        raise DomainError(f"vertex {U} does not live in F_2^{n - 1}")


def vertex_partition(U: Subspace, n: int) -> Optional[SetPartition]:
    """Set partition whose subspace is ``U``, or ``None`` when ``U`` is not a partition subspace."""

    _check_vertex(U, n)
    return _partition_of_bits(n, U.bits)


@lru_cache(maxsize=None)
def _in_tag_bits(tag: SubcomplexTag, n: int, rows: Bits) -> bool:
    if tag is SubcomplexTag.BUILDING:
        return True
    partition = _partition_of_bits(n, rows)
    if partition is None:
        return False
    return tag is SubcomplexTag.PN or is_noncrossing("A", partition)


def in_subcomplex(tag, U: Subspace, n: int) -> bool:
    _check_vertex(U, n)
    return _in_tag_bits(as_tag(tag), n, U.bits)


def vertex_element(U: Subspace, n: int) -> Permutation:
    """Non-crossing partition permutation of an |NCP_n| vertex."""

    partition = vertex_partition(U, n)
    if partition is None or not is_noncrossing("A", partition):
        raise DomainError(f"vertex {U} is not a non-crossing partition subspace")
    return partition_to_perm("A", partition)


# --------------------------------------------------------------------------
# chambers


@dataclass(frozen=True)
class Chamber:
    """Complete flag ``C_1 < ... < C_{n-2}`` in ``F_2^{n-1}``."""

    n: int
    flag: Tuple[Subspace, ...]

    def __post_init__(self) -> None:
        _check_n(self.n)
        m = self.n - 1
        if len(self.flag) != m - 1:
            raise DomainError(f"a chamber for n={self.n} has {m - 1} vertices, got {len(self.flag)}")
        for k, U in enumerate(self.flag, start=1):
            _check_vertex(U, self.n)
            if U.dim != k:
                raise DomainError(f"vertex {U} at rank {k} has dimension {U.dim}")
        for lower, upper in zip(self.flag, self.flag[1:]):
            if not lower.is_subspace_of(upper):
                raise DomainError(f"{lower} is not contained in {upper}")

    @property
    def bits(self) -> Tuple[Bits, ...]:
        return tuple(U.bits for U in self.flag)

    def sort_key(self) -> Tuple[Bits, ...]:
        return self.bits

    def vectors(self) -> Tuple[int, ...]:
        """Smallest new vector at each rank; ``chamber_from_vectors`` inverts this."""

        out = []
        below: Bits = ()
        for rows in self.bits:
            out.append(min(v for v in _span_vectors(rows) if not f2_contains(below, v)))
            below = rows
        return tuple(out)

    def __str__(self) -> str:
        m = self.n - 1
        return "flag: " + "; ".join(format(v, f"0{m}b") for v in self.vectors())


def _span_vectors(rows: Bits) -> List[int]:
    out = [0]
    for row in rows:
        out += [v ^ row for v in out]
    return out


def _chamber(n: int, flag_bits: Iterable[Bits]) -> Chamber:
    m = n - 1
    return Chamber(n, tuple(Subspace.from_bits(m, rows) for rows in flag_bits))


def chamber_from_vectors(n: int, vectors: Sequence[int]) -> Chamber:
    """Chamber with ``C_k`` spanned by the first ``k`` vectors."""

    flag = []
    for k in range(1, len(vectors) + 1):
        rows = f2_span(vectors[:k])
        if len(rows) != k:
            raise DomainError(f"vectors {list(vectors[:k])} are dependent")
        flag.append(rows)
    return _chamber(n, flag)


def chamber_from_partitions(n: int, partitions: Sequence[SetPartition]) -> Chamber:
    """Chamber whose rank-``k`` vertex is the subspace of the ``k``-th partition."""

    return Chamber(n, tuple(embed_partition(p) for p in partitions))


def chamber_from_word(letters: Sequence[Element]) -> Chamber:
    """Chamber of the prefix products of a reduced word of ``(1 2 ... n)``."""

    if not letters:
        raise DomainError("empty word")
    n = letters[0].n
    word = ReducedWord("A", n, tuple(letters))
    if word.product != coxeter_element("A", n):
        raise DomainError(f"{word} does not multiply to {format_element(coxeter_element('A', n))}")
    flag = []
    acc: Bits = ()
    for t in letters[:-1]:
        (i, j) = (k for k in range(1, n + 1) if t(k) != k)
        acc = f2_sum(acc, (edge_bits(i, j, n),))
        flag.append(acc)
    return _chamber(n, flag)


def chamber_elements(C: Chamber) -> Tuple[Permutation, ...]:
    return tuple(vertex_element(U, C.n) for U in C.flag)


def _require_chamber(tag: SubcomplexTag, C: Chamber) -> None:
    for k, U in enumerate(C.flag, start=1):
        if not _in_tag_bits(tag, C.n, U.bits):
            raise DomainError(f"vertex {U} (rank {k}) of {C} is not in |{tag.value}_{C.n}|")


def in_subcomplex_chamber(tag, C: Chamber) -> bool:
    tag = as_tag(tag)
    return all(_in_tag_bits(tag, C.n, rows) for rows in C.bits)


def _building_flags(m: int) -> Iterator[Tuple[Bits, ...]]:
    vectors = range(1, 1 << m)

    def extend(prefix: Tuple[Bits, ...], current: Bits) -> Iterator[Tuple[Bits, ...]]:
        if len(prefix) == m - 1:
            yield prefix
            return
        children = {f2_span(current + (v,)) for v in vectors if not f2_contains(current, v)}
        for child in sorted(children):
            yield from extend(prefix + (child,), child)

    yield from extend((), ())


def _merges(partition: SetPartition) -> List[SetPartition]:
    out = set()
    blocks = partition.blocks
    for a, b in combinations(range(len(blocks)), 2):
        merged = [blk for k, blk in enumerate(blocks) if k not in (a, b)] + [blocks[a] + blocks[b]]
        out.add(SetPartition(partition.n, tuple(merged)))
    return sorted(out, key=lambda p: p.blocks)


def _pn_flags(n: int) -> Iterator[Tuple[Bits, ...]]:
    def extend(prefix: Tuple[Bits, ...], current: SetPartition) -> Iterator[Tuple[Bits, ...]]:
        if len(prefix) == n - 2:
            yield prefix
            return
        for child in _merges(current):
            yield from extend(prefix + (embed_partition(child).bits,), child)

    yield from extend((), SetPartition.singletons(n))


@lru_cache(maxsize=None)
def _chambers(tag: SubcomplexTag, n: int) -> Tuple[Chamber, ...]:
    if tag is SubcomplexTag.BUILDING:
        found = [_chamber(n, flag) for flag in _building_flags(n - 1)]
    elif tag is SubcomplexTag.PN:
        found = [_chamber(n, flag) for flag in _pn_flags(n)]
    else:
        words = reduced_words("A", coxeter_element("A", n))
        found = [chamber_from_word(w.letters) for w in words]
    out = tuple(sorted(set(found), key=Chamber.sort_key))
    logger.debug("|%s_%d|: %d chambers", tag.value, n, len(out))
    return out


def chambers(tag, n: int) -> Tuple[Chamber, ...]:
    """Every chamber of the subcomplex, in canonical order."""

    tag = as_tag(tag)
    _check_n(n)
    check_guard(f"chambers:{tag.value}", n)
    return _chambers(tag, n)


def adjacent(C: Chamber, D: Chamber) -> Optional[int]:
    """Rank at which two chambers differ, when they differ at exactly one rank."""

    if C.n != D.n:
        raise DomainError("chambers of different ambients")
    ranks = [k for k, (U, V) in enumerate(zip(C.flag, D.flag), start=1) if U != V]
    return ranks[0] if len(ranks) == 1 else None


def _panel_graph(members: Iterable[Chamber]) -> nx.Graph:
    """Chambers sharing a codimension-1 face are joined by an edge coloured with the differing rank."""

    graph = nx.Graph()
    buckets: Dict[Tuple[int, Tuple[Subspace, ...]], List[Chamber]] = defaultdict(list)
    for C in members:
        graph.add_node(C)
        for k in range(len(C.flag)):
            buckets[(k, C.flag[:k] + C.flag[k + 1:])].append(C)
    for (k, _), bucket in buckets.items():
        for a, b in combinations(bucket, 2):
            graph.add_edge(a, b, color=k + 1)
    return graph


@lru_cache(maxsize=None)
def _chamber_graph(tag: SubcomplexTag, n: int) -> nx.Graph:
    graph = _panel_graph(_chambers(tag, n))
    logger.debug("chamber graph |%s_%d|: %d nodes, %d edges", tag.value, n, graph.number_of_nodes(), graph.number_of_edges())
    return graph


def chamber_graph(tag, n: int) -> nx.Graph:
    tag = as_tag(tag)
    chambers(tag, n)
    return _chamber_graph(tag, n)


@lru_cache(maxsize=None)
def _distances_from(tag: SubcomplexTag, C: Chamber) -> Dict[Chamber, int]:
    return nx.single_source_shortest_path_length(_chamber_graph(tag, C.n), C)


def distance(tag, C: Chamber, D: Chamber) -> int:
    """Gallery distance inside the subcomplex."""

    tag = as_tag(tag)
    if C.n != D.n:
        raise DomainError("chambers of different ambients")
    _require_chamber(tag, C)
    _require_chamber(tag, D)
    chambers(tag, C.n)
    dist = _distances_from(tag, C)
    if D not in dist:  # pragma: no cover
        raise VerificationError(f"{C} and {D} are not connected in |{tag.value}_{C.n}|")
    return dist[D]


def convex_hull(tag, C: Chamber, D: Chamber) -> Tuple[Chamber, ...]:
    """Chambers on minimal galleries from ``C`` to ``D``."""

    tag = as_tag(tag)
    total = distance(tag, C, D)
    from_c, from_d = _distances_from(tag, C), _distances_from(tag, D)
    hull = [E for E in from_c if from_c[E] + from_d.get(E, total + 1) == total]
    return tuple(sorted(hull, key=Chamber.sort_key))


def hull_vertices(tag, C: Chamber, D: Chamber) -> FrozenSet[Subspace]:
    return frozenset(U for E in convex_hull(tag, C, D) for U in E.flag)


def flag_sublattice(C: Chamber, D: Chamber) -> FrozenSet[Subspace]:
    """Proper nonzero subspaces in the closure of both flags under sum and intersection."""

    if C.n != D.n:
        raise DomainError("chambers of different ambients")
    m = C.n - 1
    found = set(C.bits) | set(D.bits)
    frontier = list(found)
    while frontier:
        rows = frontier.pop()
        for other in list(found):
            for new in (f2_sum(rows, other), f2_intersect(m, rows, other)):
                if new not in found:
                    found.add(new)
                    frontier.append(new)
    return frozenset(Subspace.from_bits(m, rows) for rows in found if 0 < len(rows) < m)


@dataclass(frozen=True)
class Gallery:
    """Sequence of chambers, each adjacent to the next."""

    chambers: Tuple[Chamber, ...]

    def __post_init__(self) -> None:
        if not self.chambers:
            raise DomainError("a gallery has at least one chamber")
        for a, b in zip(self.chambers, self.chambers[1:]):
            if adjacent(a, b) is None:
                raise DomainError(f"{a} and {b} are not adjacent")

    @property
    def length(self) -> int:
        return len(self.chambers) - 1

    @property
    def types(self) -> Tuple[int, ...]:
        return tuple(adjacent(a, b) for a, b in zip(self.chambers, self.chambers[1:]))


def minimal_gallery(tag, C: Chamber, D: Chamber) -> Gallery:
    """A minimal gallery; at each step the canonically smallest closer neighbour is taken."""

    tag = as_tag(tag)
    distance(tag, C, D)
    graph = _chamber_graph(tag, C.n)
    from_d = _distances_from(tag, D)
    path = [C]
    while path[-1] != D:
        here = path[-1]
        closer = [E for E in graph.neighbors(here) if from_d[E] == from_d[here] - 1]
        path.append(min(closer, key=Chamber.sort_key))
    return Gallery(tuple(path))


# --------------------------------------------------------------------------
# apartments


@dataclass(frozen=True)
class Apartment:
    """Frame of ``n - 1`` lines; ``tree`` is set when every line is an edge vector."""

    n: int
    frame: Tuple[int, ...]
    tree: Optional[Forest] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        m = self.n - 1
        frame = tuple(sorted(set(self.frame)))
        if len(frame) != m or len(f2_span(frame)) != m:
            raise DomainError(f"{[format(v, f'0{m}b') for v in frame]} is not a frame of F_2^{m}")
        object.__setattr__(self, "frame", frame)

    @property
    def lines(self) -> Tuple[Subspace, ...]:
        return tuple(Subspace.from_bits(self.n - 1, (v,)) for v in self.frame)

    def _count_inside(self, rows: Bits) -> int:
        return sum(1 for v in self.frame if f2_contains(rows, v))

    def contains_vertex(self, U: Subspace) -> bool:
        return self._count_inside(U.bits) == U.dim

    def contains(self, C: Chamber) -> bool:
        return C.n == self.n and all(self._count_inside(rows) == len(rows) for rows in C.bits)

    def vertices(self) -> Tuple[Subspace, ...]:
        m = self.n - 1
        out = [
            Subspace.from_bits(m, subset)
            for k in range(1, m)
            for subset in combinations(self.frame, k)
        ]
        return tuple(sorted(out, key=Subspace.sort_key))

    def chambers(self) -> Tuple[Chamber, ...]:
        """One chamber per ordering of the frame: ``(n-1)!`` of them."""

        return tuple(sorted({_ordered_chamber(self.n, order) for order in permutations(self.frame)}, key=Chamber.sort_key))

    def __str__(self) -> str:
        m = self.n - 1
        return "frame: " + "; ".join(format(v, f"0{m}b") for v in self.frame)


def _ordered_chamber(n: int, order: Sequence[int]) -> Chamber:
    return _chamber(n, (f2_span(order[:k]) for k in range(1, n - 1)))


def apartment_of_tree(tree: Forest) -> Apartment:
    if not tree.is_spanning:
        raise DomainError("apartments come from spanning trees")
    n = tree.n
    return Apartment(n, tuple(edge_bits(e.i, e.j, n) for e in tree.edges), tree)


def word_apartment(letters: Sequence[Element]) -> Apartment:
    """Apartment of the tree read off a reduced word of ``(1 2 ... n)``."""

    return apartment_of_tree(word_to_tree(letters).tree)


def tree_chambers(tree: Forest) -> Tuple[Chamber, ...]:
    return apartment_of_tree(tree).chambers()


def labeled_tree_chamber(tree: Forest, labeling: Sequence[Edge]) -> Chamber:
    """Chamber of a labeled tree: ``C_k`` spanned by the edges labelled ``1..k``."""

    if set(labeling) != set(tree.edges) or len(labeling) != len(tree.edges):
        raise DomainError("labeling is not a bijection onto the tree's edges")
    return _ordered_chamber(tree.n, [edge_bits(e.i, e.j, tree.n) for e in labeling])


@lru_cache(maxsize=None)
def _apartments(tag: SubcomplexTag, n: int) -> Tuple[Apartment, ...]:
    if tag is SubcomplexTag.BUILDING:
        m = n - 1
        found = [Apartment(n, frame) for frame in combinations(range(1, 1 << m), m) if len(f2_span(frame)) == m]
    else:
        found = [apartment_of_tree(t) for t in enumerate_spanning_trees(n, noncrossing=tag is SubcomplexTag.NCP)]
    logger.debug("|%s_%d|: %d apartments", tag.value, n, len(found))
    return tuple(sorted(found, key=lambda a: a.frame))


def apartments(tag, n: int) -> Tuple[Apartment, ...]:
    tag = as_tag(tag)
    _check_n(n)
    check_guard(f"apartments:{tag.value}", n)
    return _apartments(tag, n)


def _common_frame(C: Chamber, D: Chamber) -> Tuple[int, ...]:
    """Frame adapted to both flags: ``v_i`` in ``C_i`` and ``D_w(i)``, outside ``C_{i-1}``."""

    m = C.n - 1
    whole = f2_span(1 << k for k in range(m))
    cf = ((),) + C.bits + (whole,)
    df = ((),) + D.bits + (whole,)
    frame = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            meet = f2_intersect(m, cf[i], df[j])
            outside = [v for v in meet if not f2_contains(cf[i - 1], v)]
            if outside:
                frame.append(outside[0])
                break
    return tuple(frame)


def common_apartment(tag, C: Chamber, D: Chamber) -> Optional[Apartment]:
    """An apartment of the subcomplex containing both chambers, or ``None`` (never for BUILDING)."""

    tag = as_tag(tag)
    if C.n != D.n:
        raise DomainError("chambers of different ambients")
    _require_chamber(tag, C)
    _require_chamber(tag, D)
    if tag is SubcomplexTag.BUILDING:
        apartment = Apartment(C.n, _common_frame(C, D))
        if not (apartment.contains(C) and apartment.contains(D)):  # pragma: no cover
            raise VerificationError(f"frame {apartment} misses {C} or {D}")
        return apartment
    for apartment in apartments(tag, C.n):
        if apartment.contains(C) and apartment.contains(D):
            return apartment
    return None


def apartment_distance(apartment: Apartment, C: Chamber, D: Chamber) -> int:
    """Gallery distance inside one apartment."""

    for E in (C, D):
        if not apartment.contains(E):
            raise DomainError(f"{E} is not in {apartment}")
    return nx.shortest_path_length(_apartment_graph(apartment), C, D)


@lru_cache(maxsize=None)
def _apartment_graph(apartment: Apartment) -> nx.Graph:
    return _panel_graph(apartment.chambers())


# --------------------------------------------------------------------------
# constructive galleries


def _le(first: Bits, second: Bits) -> bool:
    return all(f2_contains(second, v) for v in first)


def _verified_gallery(tag: SubcomplexTag, n: int, flags: List[Tuple[Bits, ...]], apartment: Optional[Apartment] = None) -> Gallery:
    out = []
    for flag in flags:
        E = _chamber(n, flag)
        if not in_subcomplex_chamber(tag, E):
            raise VerificationError(f"gallery leaves |{tag.value}_{n}| at {E}")
        if apartment is not None and not apartment.contains(E):
            raise VerificationError(f"gallery leaves {apartment} at {E}")
        out.append(E)
    return Gallery(tuple(out))


def constructive_gallery_pn(C: Chamber, D: Chamber) -> Gallery:
    """Minimal gallery in |P_n| moving each ``D_r`` down into place with joins ``C_{k-1} + D_r``."""

    tag = SubcomplexTag.PN
    _require_chamber(tag, C)
    _require_chamber(tag, D)
    n, m = C.n, C.n - 1
    current = list(C.bits)
    target = D.bits
    flags = [tuple(current)]
    for r in range(m - 1):
        d = target[r]
        j = next((k for k in range(r, m - 1) if _le(d, current[k])), m - 1)
        for k in range(j - 1, r - 1, -1):
            below = current[k - 1] if k > 0 else ()
            current[k] = f2_sum(below, d)
            flags.append(tuple(current))
    if tuple(current) != target:  # pragma: no cover
        raise VerificationError(f"join construction ended at {current}, not {target}")
    return _verified_gallery(tag, n, flags)


def constructive_gallery_ncp_in_pn_apartment(C: Chamber, D: Chamber, apartment: Apartment) -> Gallery:
    """Minimal gallery in |NCP_n| moving each ``D_r`` up into place with meets ``C_{k+1} & D_r``."""

    tag = SubcomplexTag.NCP
    _require_chamber(tag, C)
    _require_chamber(tag, D)
    if apartment.tree is None:
        raise DomainError(f"{apartment} is not an apartment of |P_{apartment.n}|")
    for E in (C, D):
        if not apartment.contains(E):
            raise DomainError(f"{E} is not in {apartment}")
    n, m = C.n, C.n - 1
    whole = f2_span(1 << k for k in range(m))
    current = list(C.bits)
    target = D.bits
    flags = [tuple(current)]
    for r in range(m - 2, -1, -1):
        d = target[r]
        j = max((k for k in range(r + 1) if _le(current[k], d)), default=-1)
        for k in range(j + 1, r + 1):
            above = current[k + 1] if k + 1 < m - 1 else whole
            current[k] = f2_intersect(m, above, d)
            flags.append(tuple(current))
    if tuple(current) != target:  # pragma: no cover
        raise VerificationError(f"meet construction ended at {current}, not {target}")
    return _verified_gallery(tag, n, flags, apartment)


# --------------------------------------------------------------------------
# universal and base chambers


def _is_arc(block: Sequence[int], n: int) -> bool:
    members = set(block)
    return len(members) == n or sum(1 for x in members if x % n + 1 not in members) == 1


def is_base(C: Chamber) -> bool:
    """Every vertex is a partition with a single non-trivial block."""

    for U in C.flag:
        partition = vertex_partition(U, C.n)
        if partition is None or len(partition.nontrivial_blocks()) != 1:
            return False
    return True


def is_universal(C: Chamber) -> bool:
    """Every vertex has a single non-trivial block of circularly consecutive points."""

    if not is_base(C):
        return False
    for U in C.flag:
        (block,) = vertex_partition(U, C.n).nontrivial_blocks()
        if not _is_arc(block, C.n):
            return False
    return True


def universal_chambers(n: int) -> Tuple[Chamber, ...]:
    return tuple(C for C in chambers(SubcomplexTag.NCP, n) if is_universal(C))


def base_chambers(n: int) -> Tuple[Chamber, ...]:
    return tuple(C for C in chambers(SubcomplexTag.PN, n) if is_base(C))


def star_union_test(tag, C: Chamber) -> bool:
    """Does every chamber of the subcomplex share an apartment of the subcomplex with ``C``?"""

    tag = as_tag(tag)
    _require_chamber(tag, C)
    through = [A for A in apartments(tag, C.n) if A.contains(C)]
    return all(any(A.contains(E) for A in through) for E in chambers(tag, C.n))


def codim1_face_count(tag, C: Chamber) -> Tuple[int, ...]:
    """Number of chambers of the subcomplex on each codimension-1 face of ``C`` (indexed by the removed rank)."""

    tag = as_tag(tag)
    _require_chamber(tag, C)
    n, m = C.n, C.n - 1
    whole = f2_span(1 << k for k in range(m))
    flag = ((),) + C.bits + (whole,)
    counts = []
    for k in range(1, m):
        below, above = flag[k - 1], flag[k + 1]
        options = {f2_span(below + (v,)) for v in _span_vectors(above) if not f2_contains(below, v)}
        counts.append(sum(1 for rows in options if _in_tag_bits(tag, n, rows)))
    return tuple(counts)


# --------------------------------------------------------------------------
# vertices of apartments, opposition, links


def opposite_vertex(apartment: Apartment, v: Subspace) -> Subspace:
    """Span of the frame lines outside ``v``: its complement in the apartment's Boolean lattice."""

    if not apartment.contains_vertex(v) or v.dim in (0, apartment.n - 1):
        raise DomainError(f"{v} is not a vertex of {apartment}")
    rows = v.bits
    return Subspace.from_bits(apartment.n - 1, (u for u in apartment.frame if not f2_contains(rows, u)))


@lru_cache(maxsize=None)
def _skeleton(tag: SubcomplexTag, n: int) -> nx.Graph:
    graph = nx.Graph()
    for C in _chambers(tag, n):
        graph.add_nodes_from(C.flag)
        graph.add_edges_from(combinations(C.flag, 2))
    return graph


def _apartment_skeleton(apartment: Apartment) -> nx.Graph:
    graph = nx.Graph()
    vertices = apartment.vertices()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(
        (u, v) for u, v in combinations(vertices, 2) if u.is_subspace_of(v) or v.is_subspace_of(u)
    )
    return graph


def vertex_distance(tag, u: Subspace, v: Subspace, apartment: Optional[Apartment] = None) -> int:
    """Edge distance in the 1-skeleton of the subcomplex (or of one apartment)."""

    tag = as_tag(tag)
    n = u.m + 1
    for w in (u, v):
        if not in_subcomplex(tag, w, n):
            raise DomainError(f"vertex {w} is not in |{tag.value}_{n}|")
    if apartment is not None:
        return nx.shortest_path_length(_apartment_skeleton(apartment), u, v)
    chambers(tag, n)
    return nx.shortest_path_length(_skeleton(tag, n), u, v)


def link_property_scan(n: int, tag) -> Tuple[Subspace, ...]:
    """Vertices outside the subcomplex whose link in some building apartment lies inside it."""

    tag = as_tag(tag)
    check_guard("link_property_scan", n)
    m = n - 1
    found = set()
    for apartment in apartments(SubcomplexTag.BUILDING, n):
        subsets = [frozenset(s) for k in range(1, m) for s in combinations(apartment.frame, k)]
        spans = {s: f2_span(s) for s in subsets}
        for s in subsets:
            if _in_tag_bits(tag, n, spans[s]) or spans[s] in found:
                continue
            link = (t for t in subsets if t != s and (t < s or s < t))
            if all(_in_tag_bits(tag, n, spans[t]) for t in link):
                found.add(spans[s])
    out = tuple(sorted((Subspace.from_bits(m, rows) for rows in found), key=Subspace.sort_key))
    logger.info("link property scan n=%d %s: %d violations", n, tag.value, len(out))
    return out


# --------------------------------------------------------------------------
# Kreweras lift


def kreweras_chamber(C: Chamber) -> Chamber:
    """Image of an |NCP_n| chamber under ``w -> w^-1 c`` applied to every vertex (ranks reverse)."""

    _require_chamber(SubcomplexTag.NCP, C)
    c = coxeter_element("A", C.n)
    images = [w.inverse() * c for w in reversed(chamber_elements(C))]
    return Chamber(C.n, tuple(embed_nc("A", x, 2) for x in images))


# --------------------------------------------------------------------------
# Hurwitz graphs


@dataclass(frozen=True, eq=False)
class HurwitzStats:
    cox_type: str
    n: int
    chambers: int
    radius: int
    diameter: int
    lower_bound: int
    eccentricity: pd.DataFrame


@lru_cache(maxsize=None)
def hurwitz_graph(cox_type: str, n: int) -> nx.Graph:
    """Maximal chains of NC (prefix products of reduced words of ``c``), adjacent when they differ once."""

    kind = _normalize_type(cox_type)
    check_guard(f"hurwitz:{kind}", n)
    graph = nx.Graph()
    buckets: Dict[Tuple[int, Tuple[Element, ...]], List[Tuple[Element, ...]]] = defaultdict(list)
    for word in reduced_words(kind, coxeter_element(kind, n)):
        chain = word.prefixes()
        graph.add_node(chain)
        for k in range(len(chain)):
            buckets[(k, chain[:k] + chain[k + 1:])].append(chain)
    for (k, _), bucket in buckets.items():
        for a, b in combinations(bucket, 2):
            graph.add_edge(a, b, color=k + 1)
    logger.debug("Hurwitz graph %s%d: %d chains", kind, n, graph.number_of_nodes())
    return graph


def hurwitz_stats(cox_type: str, n: int) -> HurwitzStats:
    kind = _normalize_type(cox_type)
    graph = hurwitz_graph(kind, n)
    eccentricity = nx.eccentricity(graph)
    table = (
        pd.Series(eccentricity, dtype="int64")
        .value_counts()
        .sort_index()
        .rename_axis("eccentricity")
        .reset_index(name="chains")
    )
    return HurwitzStats(
        cox_type=kind,
        n=n,
        chambers=graph.number_of_nodes(),
        radius=min(eccentricity.values()),
        diameter=max(eccentricity.values()),
        lower_bound=comb(rank(kind, n), 2),
        eccentricity=table,
    )


# --------------------------------------------------------------------------
# report-only scans


def hull_equality_scan(n: int) -> Tuple[Tuple[Chamber, Chamber], ...]:
    """NCP pairs with ``d_NC = d_building`` whose hulls still differ."""

    ncp = chambers(SubcomplexTag.NCP, n)
    chambers(SubcomplexTag.BUILDING, n)
    found = []
    for C, D in combinations(ncp, 2):
        if distance(SubcomplexTag.NCP, C, D) != distance(SubcomplexTag.BUILDING, C, D):
            continue
        inside = set(convex_hull(SubcomplexTag.NCP, C, D))
        outside = {E for E in convex_hull(SubcomplexTag.BUILDING, C, D) if in_subcomplex_chamber(SubcomplexTag.NCP, E)}
        if inside != outside:
            found.append((C, D))
    logger.info("hull equality scan n=%d: %d pairs differ", n, len(found))
    return tuple(found)


@dataclass(frozen=True)
class ApartmentScan:
    frames: int
    nc_frames: int
    reduced_words: int


def nc_apartment_scan_B3(p: int = 3) -> ApartmentScan:
    """Frames of ``F_p^3`` all of whose subspaces are images of NC(B_3), against reduced words of ``c``."""

    images = {embed_nc("B", w, p) for w in nc_elements("B", 3)}
    lines = {span(p, 3, (v,)) for v in _nonzero_vectors(p, 3)}
    frames = 0
    inside = 0
    for triple in combinations(sorted(lines, key=Subspace.sort_key), 3):
        if span(p, 3, [row for line in triple for row in line.rows]).dim != 3:
            continue
        frames += 1
        sums = [span(p, 3, [row for line in subset for row in line.rows]) for k in range(4) for subset in combinations(triple, k)]
        if all(U in images for U in sums):
            inside += 1
    words = len(reduced_words("B", coxeter_element("B", 3)))
    logger.info("B3 apartment scan: %d of %d frames inside NC, %d reduced words", inside, frames, words)
    return ApartmentScan(frames, inside, words)


def _nonzero_vectors(p: int, m: int) -> Iterator[Tuple[int, ...]]:
    for k in range(1, p**m):
        yield tuple((k // p ** (m - 1 - i)) % p for i in range(m))


@dataclass(frozen=True)
class Strand:
    end: Chamber
    chambers: int
    length: float


def strand_scan(C: Chamber, D: Chamber) -> Tuple[Tuple[Strand, ...], Tuple[Tuple[int, int, float], ...]]:
    """Shortest weighted rank-1 to rank-1 path through each strand ``conv(C, E) + D`` for hull chambers ``E`` next to ``D``.

    Returns the strands and the pairwise sums of their lengths.
    """

    tag = SubcomplexTag.NCP
    n = C.n
    r = n - 2
    if r < 1:
        raise DomainError("strands need n>=3")
    ends = [E for E in convex_hull(tag, C, D) if adjacent(E, D) is not None]
    strands = []
    for E in ends:
        members = convex_hull(tag, C, E) + (D,)
        graph = nx.Graph()
        for F in members:
            for u, v in combinations(F.flag, 2):
                graph.add_edge(u, v, weight=edge_length(min(u.dim, v.dim), max(u.dim, v.dim), r))
        length = nx.dijkstra_path_length(graph, C.flag[0], D.flag[0]) if C.flag[0] != D.flag[0] else 0.0
        strands.append(Strand(E, len(members), length))
    sums = tuple((a, b, strands[a].length + strands[b].length) for a, b in combinations(range(len(strands)), 2))
    logger.info("strand scan: %d strands, pairwise sums %s", len(strands), [round(s, 6) for _, _, s in sums])
    return tuple(strands), sums


def rank_top_vertices_in_pn(n: int) -> Tuple[int, int]:
    """``(number of hyperplanes of F_2^{n-1}, number of them that are partition subspaces)``."""

    _check_n(n)
    m = n - 1
    hyperplanes = {nullspace(2, m, [functional]) for functional in _nonzero_vectors(2, m)}
    inside = sum(1 for H in hyperplanes if _partition_of_bits(n, H.bits) is not None)
    return len(hyperplanes), inside
