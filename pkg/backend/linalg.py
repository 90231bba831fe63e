"""Exact linear algebra over F_p and the subspace embeddings of NC and P_n.

Subspaces are kept in reduced row-echelon form, so equality of subspaces is
equality of their row tuples. Over F_2 all elimination runs on integer bit
masks: coordinate ``i`` of an ``m``-vector is bit ``m - i``, the leftmost
coordinate being the most significant bit. Other primes go through a numpy
elimination mod ``p``.

Type A roots live in the ``(n-1)``-dimensional identification where
``e_n = 0``: the transposition ``(i j)`` has root ``e_i - e_j`` for ``j < n``
and ``e_i`` for ``j = n``. Types B and D use the usual ``e_i -+ e_j`` and
``e_i`` coordinates in dimension ``n``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

import numpy as np
import sympy

from backend.ncp import SetPartition, nc_member
from backend.perm import (
    Cycle,
    CycleKind,
    Element,
    _length,
    _normalize_type,
    check_element,
    format_element,
    reflection_cycles,
    reflections,
    rank,
)
from backend.trees import Edge, spanning_forest
from utils.config import check_guard
from utils.errors import DomainError, IncompatiblePrime

logger = logging.getLogger(__name__)

Row = Tuple[int, ...]


@dataclass(frozen=True)
class VecFp:
    """Vector of residues mod ``p``."""

    p: int
    coords: Row

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) % self.p for c in self.coords))

    @property
    def m(self) -> int:
        return len(self.coords)

    @property
    def bits(self) -> int:
        if self.p != 2:
            raise DomainError("bit form exists only over F_2")
        return _row_to_bits(self.coords)

    @classmethod
    def from_bits(cls, m: int, bits: int) -> "VecFp":
        return cls(2, _bits_to_row(m, bits))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return format_row(self.p, self.coords)


def format_row(p: int, row: Sequence[int]) -> str:
    if p < 10:
        return "".join(str(c) for c in row)
    return ",".join(str(c) for c in row)


def _row_to_bits(row: Sequence[int]) -> int:
    bits = 0
    for c in row:
        bits = (bits << 1) | (int(c) & 1)
    return bits


def _bits_to_row(m: int, bits: int) -> Row:
    return tuple((bits >> (m - 1 - k)) & 1 for k in range(m))


# --------------------------------------------------------------------------
# F_2 on bit masks


def f2_span(vectors: Iterable[int]) -> Tuple[int, ...]:
    """Reduced echelon basis of the span, highest pivot first."""

    basis: Dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    pivots = sorted(basis)
    for idx, pj in enumerate(pivots):
        row = basis[pj]
        for pi in pivots[:idx]:
            if row >> pi & 1:
                row ^= basis[pi]
        basis[pj] = row
    return tuple(basis[p] for p in sorted(basis, reverse=True))


def f2_contains(rows: Sequence[int], v: int) -> bool:
    for row in rows:
        if v >> (row.bit_length() - 1) & 1:
            v ^= row
    return v == 0


def f2_sum(first: Sequence[int], second: Sequence[int]) -> Tuple[int, ...]:
    return f2_span(tuple(first) + tuple(second))


def f2_intersect(m: int, first: Sequence[int], second: Sequence[int]) -> Tuple[int, ...]:
    """Zassenhaus: reduce ``(u | u)`` and ``(w | 0)``; rows with empty left half span the meet."""

    mask = (1 << m) - 1
    stacked = [(u << m) | u for u in first] + [w << m for w in second]
    return f2_span(row & mask for row in f2_span(stacked) if row >> m == 0)


def f2_vectors(rows: Sequence[int]) -> Tuple[int, ...]:
    """Every vector of the span (``2^dim`` of them)."""

    out = [0]
    for row in rows:
        out += [v ^ row for v in out]
    return tuple(sorted(out))


# --------------------------------------------------------------------------
# F_p through numpy


def _as_matrix(p: int, m: int, vectors: Iterable[Sequence[int]]) -> np.ndarray:
    rows = [list(v) for v in vectors]
    if not rows:
        return np.zeros((0, m), dtype=np.int64)
    mat = np.array(rows, dtype=np.int64) % p
    if mat.shape[1] != m:
        raise DomainError(f"vectors of length {mat.shape[1]} in an ambient of dimension {m}")
    return mat


def rref_mod_p(p: int, matrix: np.ndarray) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Reduced row-echelon form mod ``p`` and the pivot columns."""

    mat = np.array(matrix, dtype=np.int64) % p
    n_rows, n_cols = mat.shape
    pivots: List[int] = []
    r = 0
    for col in range(n_cols):
        if r == n_rows:
            break
        nonzero = np.nonzero(mat[r:, col])[0]
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            mat[[r, k]] = mat[[k, r]]
        inv = pow(int(mat[r, col]), -1, p)
        mat[r] = (mat[r] * inv) % p
        for i in range(n_rows):
            if i != r and mat[i, col]:
                mat[i] = (mat[i] - mat[i, col] * mat[r]) % p
        pivots.append(col)
        r += 1
    return mat[:r], tuple(pivots)


def rank_mod_p(p: int, matrix: Sequence[Sequence[int]]) -> int:
    mat = np.array(matrix, dtype=np.int64)
    if mat.size == 0:
        return 0
    return len(rref_mod_p(p, mat)[1])


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``F_p^m`` given by its reduced echelon rows."""

    p: int
    m: int
    rows: Tuple[Row, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def bits(self) -> Tuple[int, ...]:
        if self.p != 2:
            raise DomainError("bit form exists only over F_2")
        return tuple(_row_to_bits(r) for r in self.rows)

    @classmethod
    def from_bits(cls, m: int, bits: Iterable[int]) -> "Subspace":
        return cls(2, m, tuple(_bits_to_row(m, b) for b in f2_span(bits)))

    def contains(self, v: Union[VecFp, Sequence[int], int]) -> bool:
        if self.p == 2:
            return f2_contains(self.bits, _bits_of(self.m, v))
        coords = _coords(self.p, self.m, v)
        return span(self.p, self.m, self.rows + (coords,)).dim == self.dim

    def is_subspace_of(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        if self.p == 2:
            rows = other.bits
            return all(f2_contains(rows, b) for b in self.bits)
        return subspace_sum(self, other) == other

    def vectors(self) -> Tuple[Row, ...]:
        if self.p == 2:
            return tuple(_bits_to_row(self.m, v) for v in f2_vectors(self.bits))
        out = set()
        for coeffs in product(range(self.p), repeat=self.dim):
            acc = [0] * self.m
            for c, row in zip(coeffs, self.rows):
                acc = [(a + c * x) % self.p for a, x in zip(acc, row)]
            out.add(tuple(acc))
        return tuple(sorted(out))

    def sort_key(self) -> Tuple[int, Tuple[Row, ...]]:
        return self.dim, self.rows

    def __str__(self) -> str:
        if not self.rows:
            return "0"
        return "; ".join(format_row(self.p, r) for r in self.rows)


def _coords(p: int, m: int, v: Union[VecFp, Sequence[int], int]) -> Row:
    if isinstance(v, VecFp):
        coords = v.coords
    elif isinstance(v, int):
        coords = _bits_to_row(m, v)
    else:
        coords = tuple(int(c) % p for c in v)
    if len(coords) != m:
        raise DomainError(f"vector of length {len(coords)} in an ambient of dimension {m}")
    return coords


def _bits_of(m: int, v: Union[VecFp, Sequence[int], int]) -> int:
    if isinstance(v, int):
        return v
    return _row_to_bits(_coords(2, m, v))


def _same_ambient(first: Subspace, second: Subspace) -> None:
    if (first.p, first.m) != (second.p, second.m):
        raise DomainError(f"ambient mismatch: F_{first.p}^{first.m} vs F_{second.p}^{second.m}")


def span(p: int, m: int, vectors: Iterable[Union[VecFp, Sequence[int], int]]) -> Subspace:
    if p == 2:
        return Subspace.from_bits(m, (_bits_of(m, v) for v in vectors))
    mat = _as_matrix(p, m, (_coords(p, m, v) for v in vectors))
    reduced, _ = rref_mod_p(p, mat)
    return Subspace(p, m, tuple(tuple(int(x) for x in row) for row in reduced))


def zero_subspace(p: int, m: int) -> Subspace:
    return Subspace(p, m, ())


def whole_space(p: int, m: int) -> Subspace:
    return span(p, m, (tuple(int(i == k) for i in range(m)) for k in range(m)))


def subspace_sum(first: Subspace, second: Subspace) -> Subspace:
    _same_ambient(first, second)
    if first.p == 2:
        return Subspace.from_bits(first.m, f2_sum(first.bits, second.bits))
    return span(first.p, first.m, first.rows + second.rows)


def intersect(first: Subspace, second: Subspace) -> Subspace:
    _same_ambient(first, second)
    p, m = first.p, first.m
    if p == 2:
        return Subspace.from_bits(m, f2_intersect(m, first.bits, second.bits))
    stacked = [row + row for row in first.rows] + [row + (0,) * m for row in second.rows]
    reduced, _ = rref_mod_p(p, _as_matrix(p, 2 * m, stacked))
    meet = [tuple(int(x) for x in row[m:]) for row in reduced if not any(row[:m])]
    return span(p, m, meet)


def contains(subspace: Subspace, v: Union[VecFp, Sequence[int], int]) -> bool:
    return subspace.contains(v)


def dim(subspace: Subspace) -> int:
    return subspace.dim


def nullspace(p: int, m: int, rows: Sequence[Sequence[int]]) -> Subspace:
    """Solutions ``x`` of ``A x = 0`` for the matrix ``A`` with the given rows."""

    mat = _as_matrix(p, m, rows)
    reduced, pivots = rref_mod_p(p, mat) if mat.shape[0] else (mat, ())
    basis = []
    for free in (c for c in range(m) if c not in pivots):
        x = [0] * m
        x[free] = 1
        for r, col in enumerate(pivots):
            x[col] = int(-reduced[r, free]) % p
        basis.append(x)
    return span(p, m, basis)


def right_complement(subspace: Subspace, form: Sequence[Sequence[int]]) -> Subspace:
    """``U^perp = {v : b(u, v) = 0 for all u in U}`` with ``b(u, v) = u^T B v``."""

    p, m = subspace.p, subspace.m
    if not subspace.rows:
        return whole_space(p, m)
    gram = (np.array(subspace.rows, dtype=np.int64) @ np.array(form, dtype=np.int64)) % p
    return nullspace(p, m, gram.tolist())


def left_complement(subspace: Subspace, form: Sequence[Sequence[int]]) -> Subspace:
    """``perp U = {v : b(v, u) = 0 for all u in U}``."""

    return right_complement(subspace, np.array(form, dtype=np.int64).T.tolist())


def image(subspace: Subspace, matrix: Sequence[Sequence[int]]) -> Subspace:
    """Image under ``v -> M v``."""

    p, m = subspace.p, subspace.m
    mat = np.array(matrix, dtype=np.int64)
    return span(p, m, (((mat @ np.array(row, dtype=np.int64)) % p).tolist() for row in subspace.rows))


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``F_q^m``."""

    if not 0 <= k <= m:
        raise DomainError(f"need 0 <= k <= m, got k={k}, m={m}")
    num, den = 1, 1
    for i in range(k):
        num *= q**m - q**i
        den *= q**k - q**i
    return num // den


def subspace_lattice(p: int, m: int) -> Tuple[Subspace, ...]:
    """All subspaces of ``F_p^m`` ordered by dimension."""

    check_guard("subspace_lattice", m)
    vectors = [v for v in product(range(p), repeat=m) if any(v)]
    levels: List[set] = [{zero_subspace(p, m)}]
    for _ in range(m):
        nxt = set()
        for U in levels[-1]:
            for v in vectors:
                if not U.contains(v):
                    nxt.add(span(p, m, U.rows + (v,)))
        levels.append(nxt)
    out = tuple(U for level in levels for U in sorted(level, key=Subspace.sort_key))
    logger.debug("subspace lattice of F_%d^%d: %d subspaces", p, m, len(out))
    return out


# --------------------------------------------------------------------------
# roots and compatible primes


def ambient_dim(cox_type: str, n: int) -> int:
    return rank(cox_type, n)


def _cycle_root(kind: str, n: int, cycle: Cycle) -> Row:
    if kind == "A":
        i, j = sorted(cycle.entries)
        vec = [0] * (n - 1)
        vec[i - 1] = 1
        if j < n:
            vec[j - 1] = -1
        return tuple(vec)
    vec = [0] * n
    if cycle.kind is CycleKind.BALANCED:
        vec[cycle.entries[0] - 1] = 1
        return tuple(vec)
    i, j = cycle.entries
    vec[i - 1] = 1
    vec[abs(j) - 1] = -1 if j > 0 else 1
    return tuple(vec)


@lru_cache(maxsize=None)
def positive_roots(cox_type: str, n: int) -> Dict[Element, Row]:
    """Integer root of every reflection."""

    kind = _normalize_type(cox_type)
    return {c.element(n): _cycle_root(kind, n, c) for c in reflection_cycles(kind, n)}


def reflection_root(cox_type: str, n: int, t: Element) -> Row:
    roots = positive_roots(_normalize_type(cox_type), n)
    if t not in roots:
        raise DomainError(f"{format_element(t)} is not a reflection of type {cox_type}{n}")
    return roots[t]


@lru_cache(maxsize=None)
def _basis_determinants(kind: str, n: int) -> FrozenSet[int]:
    roots = list(positive_roots(kind, n).values())
    m = ambient_dim(kind, n)
    dets = set()
    if m == 0:
        return frozenset()
    for subset in combinations(roots, m):
        det = abs(int(sympy.Matrix(subset).det(method="bareiss")))
        if det:
            dets.add(det)
    logger.debug("type %s%d: root-basis determinants %s", kind, n, sorted(dets))
    return frozenset(dets)


def is_compatible_prime(cox_type: str, n: int, p: int) -> bool:
    """Every basis of positive roots stays a basis mod ``p``."""

    kind = _normalize_type(cox_type)
    if not sympy.isprime(p):
        raise DomainError(f"{p} is not prime")
    return all(det % p for det in _basis_determinants(kind, n))


def _require_compatible(kind: str, n: int, p: int) -> None:
    if not is_compatible_prime(kind, n, p):
        raise IncompatiblePrime(kind, n, p)


# --------------------------------------------------------------------------
# embeddings


def greedy_reduced_word(cox_type: str, w: Element) -> Tuple[Element, ...]:
    """One reduced word of ``w``: repeatedly split off the first reflection that shortens it."""

    kind = check_element(cox_type, w)
    letters: List[Element] = []
    v = w
    refl = reflections(kind, w.n)
    while not v.is_identity():
        target = _length(v) - 1
        t = next(t for t in refl if _length(t * v) == target)
        letters.append(t)
        v = t * v
    return tuple(letters)


@lru_cache(maxsize=None)
def _embed(kind: str, w: Element, p: int) -> Subspace:
    n = w.n
    m = ambient_dim(kind, n)
    roots = positive_roots(kind, n)
    return span(p, m, (roots[t] for t in greedy_reduced_word(kind, w)))


def embed_nc(cox_type: str, w: Element, p: int) -> Subspace:
    """Span of the roots of a reduced word of ``w``, reduced mod ``p``."""

    kind = check_element(cox_type, w)
    if not nc_member(kind, w):
        raise DomainError(f"{format_element(w)} is not in NC({kind}{w.n})")
    _require_compatible(kind, w.n, p)
    return _embed(kind, w, p)


def edge_bits(i: int, j: int, n: int) -> int:
    i, j = min(i, j), max(i, j)
    if not 1 <= i < j <= n:
        raise DomainError(f"({i},{j}) is not an edge on {n} points")
    m = n - 1
    bits = 1 << (m - i)
    if j < n:
        bits |= 1 << (m - j)
    return bits


def edge_to_vector(edge: Union[Edge, Tuple[int, int]], n: int) -> VecFp:
    """``(i, j) -> e_i + e_j`` for ``j < n`` and ``e_i`` for ``j = n``, over F_2."""

    i, j = (edge.i, edge.j) if isinstance(edge, Edge) else edge
    return VecFp.from_bits(n - 1, edge_bits(i, j, n))


def embed_partition(partition: SetPartition) -> Subspace:
    """Span of the edge vectors of a spanning forest of the partition."""

    n = partition.n
    forest = spanning_forest(partition)
    return Subspace.from_bits(n - 1, (edge_bits(e.i, e.j, n) for e in forest.edges))
