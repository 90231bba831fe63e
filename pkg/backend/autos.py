"""Automorphisms and anti-automorphisms of NC and their linear extensions.

A bipartition ``c = l r`` of the Coxeter element (``l`` and ``r`` involutions)
gives the two automorphisms ``w -> l w^-1 l`` and ``w -> r w^-1 r``; they
generate a dihedral group acting on NC. Together with the Kreweras map
``w -> w^-1 c`` they generate the dihedral group of skew-automorphisms.

Maps are stored as image tuples aligned with ``nc_elements(cox_type, n)``
and are checked against the Hasse diagram whenever one is built.
"""

from __future__ import annotations

import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache, reduce
from itertools import combinations, product
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np
import sympy

from backend.linalg import (
    Subspace,
    ambient_dim,
    embed_nc,
    image,
    is_compatible_prime,
    left_complement,
    positive_roots,
    rank_mod_p,
    right_complement,
    span,
)
from backend.ncp import hasse_graph, nc_elements, nc_enumerate, rank1_type, rank2_class
from backend.perm import (
    Cycle,
    CycleKind,
    Element,
    ReducedWord,
    SignedPermutation,
    _length,
    _normalize_type,
    absolute_le,
    coxeter_element,
    coxeter_number,
    disjoint_cycles,
    element_order,
    format_element,
    rank,
    reduced_words,
    reflections,
    simple_reflections,
    word_product,
)
from utils.config import check_guard
from utils.errors import DegenerateForm, DomainError, IncompatiblePrime, VerificationError
from utils.notation import parse_element, parse_word

logger = logging.getLogger(__name__)


def _require_rank(kind: str, n: int) -> None:
    if rank(kind, n) < 2:
        raise DomainError(f"type {kind}{n} has rank {rank(kind, n)}; need rank >= 2")


def _power(w: Element, k: int) -> Element:
    k %= element_order(w)
    return reduce(lambda acc, _: acc * w, range(k), type(w).identity(w.n))


# --------------------------------------------------------------------------
# bipartitions


@dataclass(frozen=True)
class Bipartition:
    """Factorisation ``c = l r`` into two involutions."""

    cox_type: str
    n: int
    l: Element
    r: Element

    def __post_init__(self) -> None:
        c = coxeter_element(self.cox_type, self.n)
        if self.l * self.r != c:
            raise DomainError(f"{format_element(self.l)} * {format_element(self.r)} is not {format_element(c)}")
        for part in (self.l, self.r):
            if not (part * part).is_identity():
                raise DomainError(f"{format_element(part)} is not an involution")

    def __str__(self) -> str:
        return f"l={format_element(self.l)} r={format_element(self.r)}"


def coxeter_diagram(cox_type: str, n: int) -> nx.Graph:
    """Nodes ``0..rank-1`` stand for ``s_1..s_rank``; edges join non-commuting simple reflections."""

    kind = _normalize_type(cox_type)
    size = rank(kind, n)
    graph = nx.path_graph(size)
    if kind == "D" and size >= 2:
        graph.remove_edge(size - 2, size - 1)
        if size >= 3:
            graph.add_edge(size - 3, size - 1)
    return graph


def _matching_conjugator(kind: str, n: int, source: Element, target: Element) -> Element:
    """Some ``g`` with ``g source g^-1 = target``, read off by lining up cycles of equal shape."""

    def shape(cycle: Cycle) -> Tuple[str, int]:
        return cycle.kind.value, -len(cycle)

    src = sorted(disjoint_cycles(source), key=shape)
    dst = sorted(disjoint_cycles(target), key=shape)
    if [shape(c) for c in src] != [shape(c) for c in dst]:  # pragma: no cover
        raise VerificationError(f"{format_element(source)} and {format_element(target)} are not conjugate")
    images: Dict[int, int] = {}
    for a, b in zip(src, dst):
        for x, y in zip(a.entries, b.entries):
            images[abs(x)] = y if x > 0 else -y
    image_tuple = tuple(images[i] for i in range(1, n + 1))
    if kind == "A":
        return type(source)(image_tuple)
    g = SignedPermutation(image_tuple)
    if kind == "D" and g.sign_changes % 2:
        # flip the image of the balanced singleton: conjugating [b] is sign blind
        singleton = next(c for c in reversed(src) if c.kind is CycleKind.BALANCED and len(c) == 1)
        point = singleton.entries[0]
        flipped = list(image_tuple)
        flipped[point - 1] = -flipped[point - 1]
        g = SignedPermutation(tuple(flipped))
    return g


@lru_cache(maxsize=None)
def _standard_bipartition(kind: str, n: int) -> Bipartition:
    simples = simple_reflections(kind, n)
    graph = coxeter_diagram(kind, n)
    colors = nx.bipartite.color(graph)
    left = [simples[i] for i in sorted(graph.nodes) if colors[i] == colors[0]]
    right = [simples[i] for i in sorted(graph.nodes) if colors[i] != colors[0]]
    l_prime = word_product(kind, n, left)
    r_prime = word_product(kind, n, right)
    c = coxeter_element(kind, n)
    g0 = _matching_conjugator(kind, n, l_prime * r_prime, c)
    if g0 * l_prime * r_prime * g0.inverse() != c:  # pragma: no cover
        raise VerificationError(f"conjugator {format_element(g0)} does not reach {format_element(c)}")

    def key(g: Element) -> Tuple[int, int, Tuple[int, ...]]:
        changes = g.sign_changes if isinstance(g, SignedPermutation) else 0
        return changes, _length(g), g.image

    # the centraliser of c is <c>, so the c^k g0 are all the conjugators onto c
    g = min((_power(c, k) * g0 for k in range(coxeter_number(kind, n))), key=key)
    bipartition = Bipartition(kind, n, g * l_prime * g.inverse(), g * r_prime * g.inverse())
    logger.debug("standard bipartition of %s%d: %s via %s", kind, n, bipartition, format_element(g))
    return bipartition


def standard_bipartition(cox_type: str, n: int) -> Bipartition:
    """Two-colour the Coxeter diagram, multiply each colour class and conjugate the result onto ``c``."""

    kind = _normalize_type(cox_type)
    _require_rank(kind, n)
    return _standard_bipartition(kind, n)


def all_bipartitions_cyclic(cox_type: str, n: int) -> Tuple[Bipartition, ...]:
    """The ``h`` bipartitions ``(c^k l, c^(k-1) l)`` for ``k = 0..h-1``."""

    kind = _normalize_type(cox_type)
    base = standard_bipartition(kind, n)
    c = coxeter_element(kind, n)
    out = tuple(
        Bipartition(kind, n, _power(c, k) * base.l, _power(c, k - 1) * base.l)
        for k in range(coxeter_number(kind, n))
    )
    logger.debug("%d cyclic bipartitions of %s%d", len(set(out)), kind, n)
    return out


# --------------------------------------------------------------------------
# lattice maps


class Orientation(str, Enum):
    PRESERVING = "preserving"
    REVERSING = "reversing"


@dataclass(frozen=True)
class _Lattice:
    elements: Tuple[Element, ...]
    index: Dict[Element, int]
    ranks: Tuple[int, ...]
    edges: FrozenSet[Tuple[int, int]]
    atoms: Tuple[int, ...]
    atom_sets: Tuple[FrozenSet[int], ...]
    by_atoms: Dict[FrozenSet[int], int]


@lru_cache(maxsize=None)
def _lattice(kind: str, n: int) -> _Lattice:
    elements = nc_elements(kind, n)
    index = {w: k for k, w in enumerate(elements)}
    graph = hasse_graph(kind, n)
    edges = frozenset((index[a], index[b]) for a, b in graph.edges)
    ranks = tuple(_length(w) for w in elements)
    atoms = tuple(k for k, r in enumerate(ranks) if r == 1)
    atom_sets = tuple(
        frozenset(a for a in atoms if _length(elements[a] * w) == _length(w) - 1) for w in elements
    )
    by_atoms = {s: k for k, s in enumerate(atom_sets)}
    if len(by_atoms) != len(elements):  # pragma: no cover
        raise VerificationError(f"NC({kind}{n}) is not atomic")
    return _Lattice(elements, index, ranks, edges, atoms, atom_sets, by_atoms)


def _map_problem(lattice: _Lattice, images: Sequence[Element], orientation: "Orientation") -> Optional[str]:
    if len(images) != len(lattice.elements):
        return f"{len(images)} images for {len(lattice.elements)} elements"
    try:
        positions = [lattice.index[x] for x in images]
    except KeyError as exc:
        return f"image {format_element(exc.args[0])} is not in NC"
    if len(set(positions)) != len(positions):
        return "the map is not injective"
    for low, high in lattice.edges:
        edge = (positions[low], positions[high])
        if orientation is Orientation.REVERSING:
            edge = edge[::-1]
        if edge not in lattice.edges:
            a, b = lattice.elements[low], lattice.elements[high]
            return f"cover {format_element(a)} < {format_element(b)} is not sent to a cover"
    return None


@dataclass(frozen=True)
class LatticeMap:
    """Bijection of NC; ``images[k]`` is the image of ``nc_elements(cox_type, n)[k]``."""

    cox_type: str
    n: int
    images: Tuple[Element, ...]
    orientation: Orientation = Orientation.PRESERVING
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "cox_type", _normalize_type(self.cox_type))
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        object.__setattr__(self, "images", tuple(self.images))
        problem = _map_problem(_lattice(self.cox_type, self.n), self.images, self.orientation)
        if problem is not None:
            kind = "automorphism" if self.orientation is Orientation.PRESERVING else "anti-automorphism"
            raise DomainError(f"{self.name or 'map'} is not a lattice {kind} of NC({self.cox_type}{self.n}): {problem}")

    @classmethod
    def from_function(
        cls,
        cox_type: str,
        n: int,
        fn: Callable[[Element], Element],
        orientation: Orientation = Orientation.PRESERVING,
        name: str = "",
    ) -> "LatticeMap":
        kind = _normalize_type(cox_type)
        return cls(kind, n, tuple(fn(w) for w in _lattice(kind, n).elements), orientation, name)

    @property
    def elements(self) -> Tuple[Element, ...]:
        return _lattice(self.cox_type, self.n).elements

    def __call__(self, w: Element) -> Element:
        index = _lattice(self.cox_type, self.n).index
        if w not in index:
            raise DomainError(f"{format_element(w)} is not in NC({self.cox_type}{self.n})")
        return self.images[index[w]]

    def __mul__(self, other: "LatticeMap") -> "LatticeMap":
        """Composition ``self o other``."""

        if (self.cox_type, self.n) != (other.cox_type, other.n):
            raise DomainError("maps act on different lattices")
        same = self.orientation is other.orientation
        orientation = Orientation.PRESERVING if same else Orientation.REVERSING
        name = f"{self.name}*{other.name}" if self.name and other.name else ""
        return LatticeMap(self.cox_type, self.n, tuple(self(x) for x in other.images), orientation, name)

    def inverse(self) -> "LatticeMap":
        back = dict(zip(self.images, self.elements))
        return LatticeMap(self.cox_type, self.n, tuple(back[w] for w in self.elements), self.orientation)

    def is_identity(self) -> bool:
        return self.images == self.elements

    def order(self) -> int:
        power, k = self, 1
        while not power.is_identity():
            power, k = self * power, k + 1
        return k

    def as_pairs(self) -> Tuple[Tuple[str, str], ...]:
        return tuple((format_element(w), format_element(v)) for w, v in zip(self.elements, self.images))

    def __str__(self) -> str:
        return "\n".join(f"{w} -> {v}" for w, v in self.as_pairs())


def identity_map(cox_type: str, n: int) -> LatticeMap:
    kind = _normalize_type(cox_type)
    return LatticeMap(kind, n, _lattice(kind, n).elements, name="id")


def phi_l(cox_type: str, n: int) -> LatticeMap:
    l = standard_bipartition(cox_type, n).l
    return LatticeMap.from_function(cox_type, n, lambda w: l * w.inverse() * l, name="phi_l")


def phi_r(cox_type: str, n: int) -> LatticeMap:
    r = standard_bipartition(cox_type, n).r
    return LatticeMap.from_function(cox_type, n, lambda w: r * w.inverse() * r, name="phi_r")


def phi_n(n: int) -> LatticeMap:
    """Type D only: conjugation by the sign change ``[n]``."""

    flip = Cycle.make(CycleKind.BALANCED, (n,)).element(n)
    return LatticeMap.from_function("D", n, lambda w: flip * w * flip, name="phi_n")


def kreweras_map(cox_type: str, n: int) -> LatticeMap:
    c = coxeter_element(cox_type, n)
    return LatticeMap.from_function(cox_type, n, lambda w: w.inverse() * c, Orientation.REVERSING, "K")


def conjugation_map(cox_type: str, n: int, k: int = 1) -> LatticeMap:
    """``w -> c^k w c^-k``."""

    c = coxeter_element(cox_type, n)
    g = _power(c, k)
    g_inv = g.inverse()
    return LatticeMap.from_function(cox_type, n, lambda w: g * w * g_inv, name=f"conj_c^{k}")


def generate_group(generators: Sequence[LatticeMap]) -> Tuple[LatticeMap, ...]:
    """Closure under composition, identity first, then in breadth-first order."""

    if not generators:
        raise DomainError("need at least one generator")
    start = identity_map(generators[0].cox_type, generators[0].n)
    seen = {start.images: start}
    frontier = [start]
    while frontier:
        nxt = []
        for element in frontier:
            for gen in generators:
                product_map = gen * element
                if product_map.images not in seen:
                    seen[product_map.images] = product_map
                    nxt.append(product_map)
        frontier = nxt
    return tuple(seen.values())


def dihedral_order(cox_type: str, n: int, star: bool = False) -> int:
    """``|D|``: ``2n`` in types A and B; in type D ``4(n-1)`` for odd ``n`` or ``star``, else ``2(n-1)``."""

    kind = _normalize_type(cox_type)
    if kind in ("A", "B"):
        return 2 * n
    if star or n % 2:
        return 4 * (n - 1)
    return 2 * (n - 1)


def dihedral_group(cox_type: str, n: int, star: bool = False) -> Tuple[LatticeMap, ...]:
    """``<phi_l, phi_r>``; with ``star`` (type D) the group ``<phi_l, phi_r o phi_n>``."""

    kind = _normalize_type(cox_type)
    _require_rank(kind, n)
    if star and kind != "D":
        raise DomainError("the starred dihedral group exists in type D only")
    second = phi_r(kind, n) * phi_n(n) if star else phi_r(kind, n)
    group = generate_group((phi_l(kind, n), second))
    expected = dihedral_order(kind, n, star)
    if len(group) != expected:
        raise VerificationError(f"dihedral group of NC({kind}{n}) has order {len(group)}, expected {expected}")
    logger.info("dihedral group%s of NC(%s%d): order %d", "*" if star else "", kind, n, len(group))
    return group


def skew_group(cox_type: str, n: int) -> Tuple[LatticeMap, ...]:
    """``<phi_l, w -> w^-1 c>``: twice the order of the dihedral group, containing it with index 2."""

    kind = _normalize_type(cox_type)
    _require_rank(kind, n)
    group = generate_group((phi_l(kind, n), kreweras_map(kind, n)))
    expected = 2 * dihedral_order(kind, n)
    if len(group) != expected:
        raise VerificationError(f"skew group of NC({kind}{n}) has order {len(group)}, expected {expected}")
    logger.info("skew group of NC(%s%d): order %d", kind, n, len(group))
    return group


@dataclass(frozen=True)
class DihedralElement:
    """``rotation``: ``w -> c^k w c^-k``; ``reflection``: ``w -> c^k l w^-1 l c^-k``."""

    map: LatticeMap
    kind: str
    k: int


def classify_dihedral(cox_type: str, n: int) -> Tuple[DihedralElement, ...]:
    kind = _normalize_type(cox_type)
    c = coxeter_element(kind, n)
    l = standard_bipartition(kind, n).l
    labels: Dict[Tuple[Element, ...], Tuple[str, int]] = {}
    for k in range(coxeter_number(kind, n)):
        g = _power(c, k)
        g_inv = g.inverse()
        rotation = LatticeMap.from_function(kind, n, lambda w: g * w * g_inv)
        reflection = LatticeMap.from_function(kind, n, lambda w: g * l * w.inverse() * l * g_inv)
        labels.setdefault(rotation.images, ("rotation", k))
        labels.setdefault(reflection.images, ("reflection", k))
    out = []
    for element in dihedral_group(kind, n):
        if element.images not in labels:  # pragma: no cover
            raise VerificationError(f"{element.name or 'map'} is neither a rotation nor a reflection")
        label, k = labels[element.images]
        out.append(DihedralElement(element, label, k))
    return tuple(out)


# --------------------------------------------------------------------------
# full automorphism group


def _images_from_atoms(lattice: _Lattice, sigma: Dict[int, int]) -> Optional[Tuple[Element, ...]]:
    """Extend an atom permutation through atom sets; ``None`` when some atom set has no element."""

    out = []
    for atoms in lattice.atom_sets:
        target = lattice.by_atoms.get(frozenset(sigma[a] for a in atoms))
        if target is None:
            return None
        out.append(lattice.elements[target])
    return tuple(out)


def _atom_joins(lattice: _Lattice) -> Dict[Tuple[int, int], int]:
    joins = {}
    for a, b in combinations(lattice.atoms, 2):
        bounds = [k for k, s in enumerate(lattice.atom_sets) if a in s and b in s]
        j = min(bounds, key=lambda k: lattice.ranks[k])
        joins[a, b] = joins[b, a] = j
    return joins


def _fingerprints(lattice: _Lattice) -> Dict[int, Tuple[int, Tuple[int, ...]]]:
    ups: Dict[int, List[int]] = defaultdict(list)
    for low, high in lattice.edges:
        ups[low].append(high)
    return {
        a: (len(ups[a]), tuple(sorted(len(lattice.atom_sets[u]) for u in ups[a])))
        for a in lattice.atoms
    }


def full_aut_group(cox_type: str, n: int) -> Tuple[LatticeMap, ...]:
    """All lattice automorphisms, by backtracking over atom images."""

    kind = _normalize_type(cox_type)
    _require_rank(kind, n)
    check_guard(f"full_aut_group:{kind}", n)
    lattice = _lattice(kind, n)
    atoms = lattice.atoms
    joins = _atom_joins(lattice)
    prints = _fingerprints(lattice)
    sigma: Dict[int, int] = {}
    rank2_image: Dict[int, int] = {}
    rank2_source: Dict[int, int] = {}
    found: List[Tuple[Element, ...]] = []

    def assign(a: int, b: int) -> Optional[List[int]]:
        added: List[int] = []
        for prev in atoms:
            if prev not in sigma:
                continue
            j, jj = joins[a, prev], joins[b, sigma[prev]]
            if lattice.ranks[j] != lattice.ranks[jj]:
                break
            if lattice.ranks[j] == 2:
                if j in rank2_image:
                    if rank2_image[j] != jj:
                        break
                elif jj in rank2_source:
                    break
                else:
                    rank2_image[j], rank2_source[jj] = jj, j
                    added.append(j)
        else:
            return added
        undo(added)
        return None

    def undo(added: List[int]) -> None:
        for j in added:
            del rank2_source[rank2_image.pop(j)]

    def extend(k: int) -> None:
        if k == len(atoms):
            images = _images_from_atoms(lattice, sigma)
            if images is not None and _map_problem(lattice, images, Orientation.PRESERVING) is None:
                found.append(images)
            return
        a = atoms[k]
        used = set(sigma.values())
        for b in atoms:
            if b in used or prints[b] != prints[a]:
                continue
            added = assign(a, b)
            if added is None:
                continue
            sigma[a] = b
            extend(k + 1)
            del sigma[a]
            undo(added)

    extend(0)
    group = tuple(LatticeMap(kind, n, images) for images in found)
    logger.info("Aut(NC(%s%d)): order %d", kind, n, len(group))
    return group


# --------------------------------------------------------------------------
# the exotic automorphism of NC(D_4)

ZETA_SWAPS: Tuple[Tuple[str, str], ...] = (
    ("((1 2))", "((1 4))"),
    ("((2 3))", "((3 4))"),
    ("((1 -3))", "((-2 4))"),
    ("((-1 4))", "((-3 4))"),
    ("((2 -3))", "((1 -2))"),
)
ZETA_FIXED: Tuple[str, ...] = ("((2 4))", "((1 3))")


def exotic_zeta() -> LatticeMap:
    """The involution of NC(D_4) swapping the reflection pairs above, extended through joins."""

    lattice = _lattice("D", 4)
    sigma: Dict[int, int] = {}
    for first, second in ZETA_SWAPS:
        a, b = (lattice.index[parse_element("D", text, 4)] for text in (first, second))
        sigma[a], sigma[b] = b, a
    for text in ZETA_FIXED:
        a = lattice.index[parse_element("D", text, 4)]
        sigma[a] = a
    images = _images_from_atoms(lattice, sigma)
    if images is None:
        raise VerificationError("the swap list does not extend to NC(D4)")
    zeta = LatticeMap("D", 4, images, name="zeta")
    if not (zeta * zeta).is_identity():
        raise VerificationError("zeta is not an involution")
    if zeta in dihedral_group("D", 4, star=True):
        raise VerificationError("zeta lies in the starred dihedral group")
    if all(rank1_type("D", 4, zeta(lattice.elements[a])) == rank1_type("D", 4, lattice.elements[a]) for a in lattice.atoms):
        raise VerificationError("zeta preserves every rank-1 type")
    return zeta


# --------------------------------------------------------------------------
# extension to the subspace lattice


@dataclass(frozen=True)
class LinearExtension:
    """``psi`` acting on column vectors of ``F_p^m``; ``signs`` fix the images of the simple roots."""

    p: int
    matrix: Tuple[Tuple[int, ...], ...]
    signs: Tuple[int, ...]

    def apply(self, subspace: Subspace) -> Subspace:
        return image(subspace, self.matrix)


def _line(p: int, m: int, vector: Iterable[int]) -> Subspace:
    return span(p, m, [tuple(int(x) % p for x in vector)])


def _try_extend(lmap: LatticeMap, p: int) -> Tuple[Optional[LinearExtension], str]:
    kind, n = lmap.cox_type, lmap.n
    if lmap.orientation is not Orientation.PRESERVING:
        raise DomainError("only order-preserving maps extend to automorphisms")
    if not is_compatible_prime(kind, n, p):
        raise IncompatiblePrime(kind, n, p)
    m = ambient_dim(kind, n)
    roots = positive_roots(kind, n)
    simples = simple_reflections(kind, n)
    basis_inverse = sympy.Matrix([roots[s] for s in simples]).T.inv_mod(p)
    targets = [roots[lmap(s)] for s in simples]
    patterns = [(1,) * m] if p == 2 else product((1, -1), repeat=m)
    reason = "no sign pattern on the simple roots works"
    for signs in patterns:
        columns = sympy.Matrix([[sign * x for x in target] for sign, target in zip(signs, targets)]).T
        matrix = (columns * basis_inverse).applyfunc(lambda x: x % p)
        rows = tuple(tuple(int(matrix[i, j]) for j in range(m)) for i in range(m))
        mat = np.array(rows, dtype=np.int64)
        bad_root = next(
            (t for t, root in roots.items() if _line(p, m, mat @ np.array(root, dtype=np.int64)) != _line(p, m, roots[lmap(t)])),
            None,
        )
        if bad_root is not None:
            reason = f"alpha of {format_element(bad_root)} is not sent to the root line of its image"
            continue
        bad = next((w for w in lmap.elements if image(embed_nc(kind, w, p), rows) != embed_nc(kind, lmap(w), p)), None)
        if bad is not None:
            reason = f"the moved space of {format_element(bad)} is not sent to that of its image"
            continue
        return LinearExtension(p, rows, tuple(signs)), ""
    return None, reason


def extend_to_lambda(lmap: LatticeMap, p: int) -> LinearExtension:
    """Linear map with ``psi(alpha_t)`` on the root line of ``phi(t)`` and ``psi(f(w)) = f(phi(w))`` on all of NC."""

    extension, reason = _try_extend(lmap, p)
    if extension is None:
        raise VerificationError(f"{lmap.name or 'map'} does not extend over F_{p}: {reason}")
    logger.info("%s extends over F_%d with signs %s", lmap.name or "map", p, extension.signs)
    return extension


@dataclass(frozen=True)
class ExtensionAttempt:
    p: int
    success: bool
    reason: str
    extension: Optional[LinearExtension] = None


def zeta_extension_attempt(p: int = 3) -> ExtensionAttempt:
    """Try to extend zeta linearly from its atom images; the outcome is reported, not asserted."""

    extension, reason = _try_extend(exotic_zeta(), p)
    attempt = ExtensionAttempt(p, extension is not None, reason, extension)
    logger.info("zeta extension over F_%d: %s", p, "found" if attempt.success else reason)
    return attempt


# --------------------------------------------------------------------------
# bilinear forms and the Kreweras map on subspaces


@dataclass(frozen=True)
class BilinearForm:
    """``b(u, v) = u^T B v`` with integer coefficients, reduced mod ``p`` on use."""

    cox_type: str
    n: int
    coefficients: Tuple[Tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.coefficients)

    def __call__(self, u: Sequence[int], v: Sequence[int]) -> int:
        return int(np.array(u, dtype=np.int64) @ np.array(self.coefficients, dtype=np.int64) @ np.array(v, dtype=np.int64))

    def is_degenerate(self, p: int) -> bool:
        return rank_mod_p(p, self.coefficients) < self.m


def _form_entry(kind: str, n: int, i: int, j: int) -> int:
    if kind == "A":
        return 1 if i <= j else 0
    if kind == "B":
        return 1 if i <= j else -1
    if i <= j < n or i == j == n:
        return 1
    if j < i < n:
        return -1
    return 0


def bilinear_form(cox_type: str, n: int) -> BilinearForm:
    kind = _normalize_type(cox_type)
    m = ambient_dim(kind, n)
    coefficients = tuple(tuple(_form_entry(kind, n, i, j) for j in range(1, m + 1)) for i in range(1, m + 1))
    return BilinearForm(kind, n, coefficients)


def complement(subspace: Subspace, form: BilinearForm, side: str = "right") -> Subspace:
    """``U^perp`` (right) or ``perp U`` (left) under ``form``."""

    if subspace.m != form.m:
        raise DomainError(f"subspace of F_{subspace.p}^{subspace.m} against a form of dimension {form.m}")
    if form.is_degenerate(subspace.p):
        raise DegenerateForm(f"the type-{form.cox_type} form is degenerate mod {subspace.p}")
    if side == "right":
        return right_complement(subspace, form.coefficients)
    if side == "left":
        return left_complement(subspace, form.coefficients)
    raise DomainError(f"side must be 'left' or 'right', got {side!r}")


def subordination(cox_type: str, n: int, t: Element) -> Tuple[Element, ...]:
    """Reflections ``s != t`` with ``s t`` in NC."""

    kind = _normalize_type(cox_type)
    refl = reflections(kind, n)
    if t not in refl:
        raise DomainError(f"{format_element(t)} is not a reflection of type {kind}{n}")
    c = coxeter_element(kind, n)
    return tuple(s for s in refl if s != t and absolute_le(kind, s * t, c))


def form_vanishing_failures(cox_type: str, n: int) -> Tuple[Tuple[Element, Element, int], ...]:
    """Subordinate pairs ``(s, t)`` with ``b(alpha_s, alpha_t) != 0``, computed over the integers."""

    kind = _normalize_type(cox_type)
    form = bilinear_form(kind, n)
    roots = positive_roots(kind, n)
    failures = []
    for t in reflections(kind, n):
        for s in subordination(kind, n, t):
            value = form(roots[s], roots[t])
            if value:
                failures.append((s, t, value))
    return tuple(failures)


def verify_form_vanishing(cox_type: str, n: int) -> bool:
    failures = form_vanishing_failures(cox_type, n)
    for s, t, value in failures[:5]:
        logger.warning("b(%s, %s) = %d", format_element(s), format_element(t), value)
    return not failures


def antiauto_extension_failures(cox_type: str, n: int, p: int) -> Tuple[Element, ...]:
    """Elements ``w`` with ``f(w)^perp != f(w^-1 c)``."""

    kind = _normalize_type(cox_type)
    form = bilinear_form(kind, n)
    if form.is_degenerate(p):
        raise DegenerateForm(f"the type-{kind} form is degenerate mod {p}")
    c = coxeter_element(kind, n)
    return tuple(
        w
        for w in nc_elements(kind, n)
        if right_complement(embed_nc(kind, w, p), form.coefficients) != embed_nc(kind, w.inverse() * c, p)
    )


def verify_antiauto_extension(cox_type: str, n: int, p: int) -> bool:
    """``f(w)^perp = f(w^-1 c)`` for every ``w`` in NC."""

    failures = antiauto_extension_failures(cox_type, n, p)
    for w in failures[:5]:
        logger.warning("complement of f(%s) is not f of its Kreweras image", format_element(w))
    return not failures


# --------------------------------------------------------------------------
# rank-2 reduced words

# element pattern -> its reduced words; a < b < c < d index points, n is the rank
RANK2_TABLE_B: Tuple[Tuple[str, Tuple[str, ...]], ...] = (
    ("[a b]", ("((a b))[b]", "((a -b))[a]", "[a]((a b))", "[b]((a -b))")),
    ("((a -c))[b]", ("((a -c))[b]", "[b]((a -c))")),
    ("((b c))[a]", ("((b c))[a]", "[a]((b c))")),
    ("((a b))[c]", ("((a b))[c]", "[c]((a b))")),
    ("((a b c))", ("((a b))((b c))", "((b c))((a c))", "((a c))((a b))")),
    ("((a b -c))", ("((a b))((b -c))", "((b -c))((a -c))", "((a -c))((a b))")),
    ("((a -b -c))", ("((a -b))((b c))", "((b c))((a -c))", "((a -c))((a -b))")),
    ("((a b))((c d))", ("((a b))((c d))", "((c d))((a b))")),
    ("((a b))((c -d))", ("((a b))((c -d))", "((c -d))((a b))")),
    ("((a -b))((c d))", ("((a -b))((c d))", "((c d))((a -b))")),
    ("((a d))((b c))", ("((a d))((b c))", "((b c))((a d))")),
    ("((a -d))((b c))", ("((a -d))((b c))", "((b c))((a -d))")),
    ("((a -d))((b -c))", ("((a -d))((b -c))", "((b -c))((a -d))")),
)

RANK2_TABLE_D: Tuple[Tuple[str, Tuple[str, ...]], ...] = (
    ("((a b c))", ("((a b))((b c))", "((b c))((a c))", "((a c))((a b))")),
    ("((a b -c))", ("((a b))((b -c))", "((b -c))((a -c))", "((a -c))((a b))")),
    ("((a -b -c))", ("((a -b))((b c))", "((b c))((a -c))", "((a -c))((a -b))")),
    ("((a b))((c n))", ("((a b))((c n))", "((c n))((a b))")),
    ("((a b))((-c n))", ("((a b))((-c n))", "((-c n))((a b))")),
    ("((b c))((a n))", ("((b c))((a n))", "((a n))((b c))")),
    ("((b c))((-a n))", ("((b c))((-a n))", "((-a n))((b c))")),
    ("((a -c))((b n))", ("((a -c))((b n))", "((b n))((a -c))")),
    ("((a -c))((-b n))", ("((a -c))((-b n))", "((-b n))((a -c))")),
    ("((a b n))", ("((a b))((b n))", "((b n))((a n))", "((a n))((a b))")),
    ("((-a -b n))", ("((a b))((-b n))", "((-b n))((-a n))", "((-a n))((a b))")),
    ("((b -a n))", ("((a -b))((-a n))", "((-a n))((b n))", "((b n))((a -b))")),
    ("((-b a n))", ("((a -b))((a n))", "((a n))((-b n))", "((-b n))((a -b))")),
    ("[c][n]", ("((c n))((-c n))", "((-c n))((c n))")),
    ("((a b))((c d))", ("((a b))((c d))", "((c d))((a b))")),
    ("((a b))((c -d))", ("((a b))((c -d))", "((c -d))((a b))")),
    ("((a -b))((c d))", ("((a -b))((c d))", "((c d))((a -b))")),
    ("((a d))((b c))", ("((a d))((b c))", "((b c))((a d))")),
    ("((a -d))((b c))", ("((a -d))((b c))", "((b c))((a -d))")),
    ("((a -d))((b -c))", ("((a -d))((b -c))", "((b -c))((a -d))")),
)

_LETTER = re.compile(r"[a-dn]")


def rank2_table(cox_type: str) -> Tuple[Tuple[str, Tuple[str, ...]], ...]:
    kind = _normalize_type(cox_type)
    if kind == "B":
        return RANK2_TABLE_B
    if kind == "D":
        return RANK2_TABLE_D
    raise DomainError("rank-2 tables exist for types B and D")


@dataclass(frozen=True)
class TableRow:
    pattern: str
    element: Element
    words: FrozenSet[Tuple[Element, ...]]


def instantiate_rank2_table(cox_type: str, n: int) -> Tuple[TableRow, ...]:
    """Every row at every increasing choice of its index letters (all below ``n`` in type D)."""

    kind = _normalize_type(cox_type)
    top = n if kind == "B" else n - 1
    rows = []
    for pattern, words in rank2_table(kind):
        letters = sorted(set(_LETTER.findall(pattern)) - {"n"})
        for values in combinations(range(1, top + 1), len(letters)):
            lookup = dict(zip(letters, values), n=n)

            def fill(text: str) -> str:
                return _LETTER.sub(lambda match: str(lookup[match.group()]), text)

            element = parse_element(kind, fill(pattern), n)
            expected = frozenset(parse_word(kind, fill(word), n) for word in words)
            rows.append(TableRow(pattern, element, expected))
    return tuple(rows)


def rank2_word_table(cox_type: str, n: int) -> Dict[int, Dict[Element, Tuple[ReducedWord, ...]]]:
    """Reduced words of every rank-2 element of NC, grouped by rank-2 class."""

    kind = _normalize_type(cox_type)
    rank2_table(kind)
    table: Dict[int, Dict[Element, Tuple[ReducedWord, ...]]] = defaultdict(dict)
    for x in nc_enumerate(kind, n)[2]:
        table[rank2_class(kind, n, x)][x] = reduced_words(kind, x)
    return dict(table)


def rank2_table_mismatches(cox_type: str, n: int) -> Tuple[str, ...]:
    """Differences between the enumerated rank-2 words and the table rows; empty when they agree."""

    kind = _normalize_type(cox_type)
    enumerated = {x: words for level in rank2_word_table(kind, n).values() for x, words in level.items()}
    problems: List[str] = []
    covered: Set[Element] = set()
    for row in instantiate_rank2_table(kind, n):
        covered.add(row.element)
        if row.element not in enumerated:
            problems.append(f"{row.pattern}: {format_element(row.element)} is not a rank-2 element of NC")
            continue
        found = frozenset(word.letters for word in enumerated[row.element])
        if found != row.words:
            problems.append(f"{row.pattern}: {format_element(row.element)} has {len(found)} words, table lists {len(row.words)}")
    for x in sorted(set(enumerated) - covered, key=lambda w: w.image):
        problems.append(f"{format_element(x)} is not covered by any row")
    return tuple(problems)
