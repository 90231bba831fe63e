"""Spherical edge lengths in type-A Coxeter complexes.

An apartment of rank ``r`` is the barycentric subdivision of the boundary of
the ``r``-simplex, realised on the unit sphere. The edge joining a rank-``i``
vertex to a rank-``j`` vertex (``i < j``) has length
``arccos sqrt(i (s - j) / (j (s - i)))`` with ``s = r + 1``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Tuple

import numpy as np
import sympy

from utils.errors import DomainError, VerificationError

logger = logging.getLogger(__name__)

FLOAT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class EdgeLength:
    i: int
    j: int
    r: int
    value: float


@dataclass(frozen=True)
class HolePath:
    """The three segments of the length-pi path through an opposite link."""

    x: int
    y: int
    r: int
    a: float
    b: float
    c: float

    @property
    def total(self) -> float:
        return self.a + self.b + self.c


def _check_ranks(i: int, j: int, r: int) -> None:
    if not 1 <= i < j <= r:
        raise DomainError(f"need 1 <= i < j <= r, got i={i}, j={j}, r={r}")


def edge_cos_squared(i: int, j: int, r: int) -> sympy.Rational:
    _check_ranks(i, j, r)
    s = r + 1
    return sympy.Rational(i * (s - j), j * (s - i))


def edge_length(i: int, j: int, r: int) -> float:
    _check_ranks(i, j, r)
    s = r + 1
    return math.acos(math.sqrt(i * (s - j) / (j * (s - i))))


def edge(i: int, j: int, r: int) -> EdgeLength:
    return EdgeLength(i, j, r, edge_length(i, j, r))


def barycenter_edge_length(i: int, j: int, r: int) -> float:
    """Arc between the normalised barycentres of nested faces of the ``r``-simplex."""

    _check_ranks(i, j, r)
    s = r + 1
    vertices = np.eye(s)
    centre = vertices.mean(axis=0)
    first = vertices[:i].mean(axis=0) - centre
    second = vertices[:j].mean(axis=0) - centre
    cos = float(first @ second / (np.linalg.norm(first) * np.linalg.norm(second)))
    return math.acos(min(1.0, max(-1.0, cos)))


def _hole_radicands(x: int, y: int, r: int) -> Tuple[sympy.Rational, sympy.Rational, sympy.Rational]:
    if not 1 <= x < y <= r:
        raise DomainError(f"need 1 <= x < y <= r, got x={x}, y={y}, r={r}")
    s = r + 1
    a = sympy.Rational(x * (y - x), (s + x - y) * (s - x))
    b = sympy.Rational(x * (s - y), y * (s - x))
    c = sympy.Rational((y - x) * (s - y), y * (s + x - y))
    return a, b, c


def opposite_link_path_length(x: int, y: int, r: int) -> HolePath:
    """Segments ``l_xu``, ``l_xy``, ``l_vy`` with ``u = s - y + x`` and ``v = y - x``."""

    a, b, c = (math.acos(math.sqrt(float(q))) for q in _hole_radicands(x, y, r))
    path = HolePath(x, y, r, a, b, c)
    logger.debug("hole path x=%d y=%d r=%d: total %.15f", x, y, r, path.total)
    return path


def _rational_sqrt(value: sympy.Rational) -> sympy.Rational:
    root = sympy.sqrt(value)
    if not root.is_Rational:
        raise VerificationError(f"radicand {value} is not the square of a rational")
    return root


def exact_cos_total(x: int, y: int, r: int) -> sympy.Rational:
    """``cos(A + B + C)`` in exact rationals; each composite radicand must be a rational square."""

    a, b, c = _hole_radicands(x, y, r)
    terms = (
        _rational_sqrt(a * b * c),
        _rational_sqrt(a * (1 - b) * (1 - c)),
        _rational_sqrt(b * (1 - a) * (1 - c)),
        _rational_sqrt(c * (1 - a) * (1 - b)),
    )
    return terms[0] - terms[1] - terms[2] - terms[3]


def path_length(rank_sequence: Sequence[int], r: int) -> float:
    """Sum of edge lengths along a vertex path given by its ranks."""

    total = 0.0
    for first, second in zip(rank_sequence, rank_sequence[1:]):
        if first == second:
            raise DomainError(f"consecutive vertices of equal rank {first}")
        total += edge_length(min(first, second), max(first, second), r)
    return total


def edge_table(r: int) -> Tuple[EdgeLength, ...]:
    """All edge lengths of a rank-``r`` apartment."""

    return tuple(edge(i, j, r) for i, j in combinations(range(1, r + 1), 2))


# the two strands of the five-point hull: rank-1/rank-3 and rank-1/rank-2 zigzags
GAMMA_2_RANKS: Tuple[int, ...] = (1, 3, 1)
GAMMA_3_RANKS: Tuple[int, ...] = (1, 2, 1, 2, 1)
