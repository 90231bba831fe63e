"""Edges, forests and labeled trees on the n-gon.

An edge ``(i, j)`` stands for the transposition ``(i j)``. A non-crossing
spanning tree together with a good labeling reads off a reduced word of the
Coxeter element ``(1 2 ... n)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx

from backend.ncp import SetPartition
from backend.perm import Cycle, CycleKind, Permutation, coxeter_element, disjoint_cycles, word_product
from utils.config import check_guard
from utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Edge:
    i: int
    j: int

    def __post_init__(self) -> None:
        if not 1 <= self.i < self.j:
            raise DomainError(f"edge ({self.i},{self.j}) needs 1 <= i < j")

    def transposition(self, n: int) -> Permutation:
        return Cycle.make(CycleKind.UNSIGNED, (self.i, self.j)).element(n)

    def crosses(self, other: "Edge") -> bool:
        a, b = sorted((self, other))
        return a.i < b.i < a.j < b.j


@dataclass(frozen=True)
class Forest:
    """Acyclic edge set on the vertices ``1..n``."""

    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", frozenset(self.edges))
        if any(e.j > self.n for e in self.edges):
            raise DomainError(f"edge outside 1..{self.n}")
        if not nx.is_forest(self.graph()):
            raise DomainError(f"edges {sorted(self.edges)} contain a cycle")

    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from((e.i, e.j) for e in self.edges)
        return graph

    @property
    def is_noncrossing(self) -> bool:
        edges = sorted(self.edges)
        return not any(a.crosses(b) for a, b in combinations(edges, 2))

    @property
    def is_spanning(self) -> bool:
        return len(self.edges) == self.n - 1

    def partition(self) -> SetPartition:
        """Join of the edges: the connected components."""

        return SetPartition(self.n, tuple(tuple(c) for c in nx.connected_components(self.graph())))

    def sorted_edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))


@dataclass(frozen=True)
class LabeledTree:
    """A spanning tree with ``labeling[k-1]`` the edge carrying label ``k``."""

    tree: Forest
    labeling: Tuple[Edge, ...]

    def __post_init__(self) -> None:
        if not self.tree.is_spanning:
            raise DomainError("a labeled tree must be spanning")
        if set(self.labeling) != set(self.tree.edges) or len(self.labeling) != len(self.tree.edges):
            raise DomainError("labeling is not a bijection onto the tree's edges")


@dataclass(frozen=True)
class ForestWord:
    letters: Tuple[Permutation, ...]
    reduced_for_coxeter: bool


def make_forest(n: int, pairs: Iterable[Tuple[int, int]]) -> Forest:
    return Forest(n, frozenset(Edge(min(a, b), max(a, b)) for a, b in pairs))


def is_good_labeling(tree: Forest, labeling: Sequence[Edge]) -> bool:
    """Around each vertex the labels increase counterclockwise."""

    label = {edge: k for k, edge in enumerate(labeling, start=1)}
    n = tree.n
    for v in range(1, n + 1):
        incident = [e for e in tree.edges if v in (e.i, e.j)]
        # neighbours ordered by decreasing clockwise offset from v
        incident.sort(key=lambda e: -(((e.j if e.i == v else e.i) - v) % n))
        labels = [label[e] for e in incident]
        if any(a > b for a, b in zip(labels, labels[1:])):
            return False
    return True


def forest_to_word(forest: Forest, labeling: Sequence[Edge]) -> ForestWord:
    """Transpositions of the edges in label order."""

    labeling = tuple(labeling)
    if set(labeling) != set(forest.edges) or len(labeling) != len(forest.edges):
        raise DomainError("labeling is not a bijection onto the forest's edges")
    letters = tuple(e.transposition(forest.n) for e in labeling)
    reduced = forest.is_spanning and forest.is_noncrossing and is_good_labeling(forest, labeling)
    return ForestWord(letters, reduced)


def word_to_tree(letters: Sequence[Permutation]) -> LabeledTree:
    """Labeled tree of a word of transpositions (inverse of ``forest_to_word``)."""

    if not letters:
        raise DomainError("empty word")
    n = letters[0].n
    edges: List[Edge] = []
    for t in letters:
        cycles = disjoint_cycles(t)
        if len(cycles) != 1 or len(cycles[0]) != 2:
            raise DomainError(f"{t} is not a transposition")
        edges.append(Edge(*cycles[0].entries))
    return LabeledTree(Forest(n, frozenset(edges)), tuple(edges))


def good_labelings(tree: Forest) -> Tuple[Tuple[Edge, ...], ...]:
    if not tree.is_spanning:
        raise DomainError("good labelings are defined for spanning trees")
    if not tree.is_noncrossing:
        raise DomainError(f"tree {sorted(tree.edges)} is crossing")
    return tuple(lab for lab in permutations(tree.sorted_edges()) if is_good_labeling(tree, lab))


def spanning_forest(partition: SetPartition) -> Forest:
    """Sorted path through every block."""

    edges = [Edge(a, b) for block in partition.blocks for a, b in zip(block, block[1:])]
    return Forest(partition.n, frozenset(edges))


def count_spanning_trees(n: int) -> int:
    return 1 if n <= 2 else n ** (n - 2)


def count_nc_spanning_trees(n: int) -> int:
    return comb(3 * n - 3, n - 1) // (2 * n - 1)


def all_edges(n: int) -> Tuple[Edge, ...]:
    return tuple(Edge(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


@lru_cache(maxsize=None)
def _spanning_trees(n: int) -> Tuple[Forest, ...]:
    found = []
    for edges in combinations(all_edges(n), n - 1):
        graph = nx.Graph()
        graph.add_nodes_from(range(1, n + 1))
        graph.add_edges_from((e.i, e.j) for e in edges)
        if nx.is_tree(graph):
            found.append(Forest(n, frozenset(edges)))
    logger.debug("%d spanning trees on %d vertices", len(found), n)
    return tuple(found)


def enumerate_spanning_trees(n: int, noncrossing: bool = False) -> Tuple[Forest, ...]:
    check_guard("spanning_trees", n)
    trees = _spanning_trees(n)
    if noncrossing:
        return tuple(t for t in trees if t.is_noncrossing)
    return trees


def product_is_coxeter(tree: Forest, labeling: Sequence[Edge]) -> bool:
    """Product test for a labeling: does the word multiply to ``(1 2 ... n)``?"""

    word = forest_to_word(tree, labeling)
    return word_product("A", tree.n, word.letters) == coxeter_element("A", tree.n)
