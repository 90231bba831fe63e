"""Counting tables: closed forms next to brute-force enumeration.

Every builder returns a ``pandas.DataFrame`` with one row per ``n``. A closed
form column ``x`` is paired with ``x_enumerated``. When the enumeration is
above its size guard the enumerated cell stays empty (``<NA>``) and the row is
flagged, so the closed form is still shown. With ``strict=True`` the guard
error propagates instead.
"""

from __future__ import annotations

import logging
from math import factorial, prod
from typing import Callable, Dict, List, Optional, Tuple

import pandas as pd
import sympy

from backend.complex import (
    SubcomplexTag,
    apartments,
    base_chambers,
    chambers,
    universal_chambers,
    vertex_partition,
)
from backend.linalg import gaussian_binomial, subspace_lattice
from backend.ncp import catalan, is_noncrossing, nc_count, nc_elements
from backend.perm import MIN_N, _normalize_type
from backend.trees import count_nc_spanning_trees, count_spanning_trees
from utils.errors import DomainError, GuardExceeded

logger = logging.getLogger(__name__)

ENUMERATED_SUFFIX = "_enumerated"

TABLE_KINDS: Tuple[str, ...] = ("elements", "apartments", "chambers", "special")


# --------------------------------------------------------------------------
# closed forms


def partition_count(n: int) -> int:
    """Bell number: all set partitions of ``n`` points."""

    return int(sympy.bell(n))


def subspace_count(n: int) -> int:
    """All subspaces of ``F_2^{n-1}``."""

    m = n - 1
    return sum(gaussian_binomial(m, k, 2) for k in range(m + 1))


def frame_count(n: int) -> int:
    """Frames of ``F_2^{n-1}``: ordered bases modulo reordering."""

    m = n - 1
    return prod(2**m - 2**k for k in range(m)) // factorial(m)


def flag_count(n: int) -> int:
    """Complete flags of ``F_2^{n-1}``."""

    return prod(2**k - 1 for k in range(1, n))


APARTMENT_COUNTS: Dict[SubcomplexTag, Callable[[int], int]] = {
    SubcomplexTag.NCP: count_nc_spanning_trees,
    SubcomplexTag.PN: count_spanning_trees,
    SubcomplexTag.BUILDING: frame_count,
}

CHAMBER_COUNTS: Dict[SubcomplexTag, Callable[[int], int]] = {
    SubcomplexTag.NCP: lambda n: n ** (n - 2),
    SubcomplexTag.PN: lambda n: factorial(n) * factorial(n - 1) // 2 ** (n - 1),
    SubcomplexTag.BUILDING: flag_count,
}


def universal_count(n: int) -> int:
    return n * 2 ** (n - 3)


def base_count(n: int) -> int:
    return factorial(n) // 2


# --------------------------------------------------------------------------
# enumeration


def _enumerated(count: Callable[[], int], strict: bool) -> Optional[int]:
    try:
        return count()
    except GuardExceeded as exc:
        if strict:
            raise
        logger.warning("%s; showing the closed form only", exc)
        return None


def _classify_subspaces(n: int) -> Tuple[int, int, int]:
    """``(non-crossing partition subspaces, partition subspaces, all subspaces)`` of ``F_2^{n-1}``."""

    ncp = pn = total = 0
    for U in subspace_lattice(2, n - 1):
        total += 1
        partition = vertex_partition(U, n)
        if partition is None:
            continue
        pn += 1
        ncp += is_noncrossing("A", partition)
    return ncp, pn, total


def _frame(rows: List[Dict[str, object]], enumerated: List[str]) -> pd.DataFrame:
    frame = pd.DataFrame(rows)
    for column in enumerated:
        frame[column] = frame[column].astype("Int64")
    frame["flagged"] = frame[enumerated].isna().any(axis=1)
    return frame


def _check_range(start: int, n: int) -> None:
    if n < start:
        raise DomainError(f"need n >= {start}, got n={n}")


# --------------------------------------------------------------------------
# tables


def element_table(n: int, cox_type: str = "A", start: Optional[int] = None, strict: bool = False) -> pd.DataFrame:
    """Type A: |NCP_k|, |P_k| and |Λ(F_2^{k-1})| for ``k = start..n``; types B and D: |NC(W)|."""

    kind = _normalize_type(cox_type)
    start = MIN_N[kind] if start is None else start
    _check_range(start, n)
    rows: List[Dict[str, object]] = []
    if kind == "A":
        for k in range(start, n + 1):
            found = _enumerated(lambda: _classify_subspaces(k), strict)
            ncp, pn, total = found if found is not None else (None, None, None)
            rows.append(
                {
                    "n": k,
                    "ncp": catalan(k),
                    "ncp_enumerated": ncp,
                    "p": partition_count(k),
                    "p_enumerated": pn,
                    "lambda": subspace_count(k),
                    "lambda_enumerated": total,
                }
            )
        return _frame(rows, ["ncp_enumerated", "p_enumerated", "lambda_enumerated"])
    for k in range(start, n + 1):
        rows.append(
            {
                "n": k,
                "nc": nc_count(kind, k),
                "nc_enumerated": _enumerated(lambda: len(nc_elements(kind, k)), strict),
            }
        )
    return _frame(rows, ["nc_enumerated"])


def _tag_table(
    n: int,
    start: int,
    closed: Dict[SubcomplexTag, Callable[[int], int]],
    enumerate_: Callable[[SubcomplexTag, int], int],
    strict: bool,
) -> pd.DataFrame:
    _check_range(start, n)
    rows: List[Dict[str, object]] = []
    for k in range(start, n + 1):
        row: Dict[str, object] = {"n": k}
        for tag, formula in closed.items():
            name = tag.value.lower()
            row[name] = formula(k)
            row[name + ENUMERATED_SUFFIX] = _enumerated(lambda: enumerate_(tag, k), strict)
        rows.append(row)
    columns = [tag.value.lower() + ENUMERATED_SUFFIX for tag in closed]
    return _frame(rows, columns)


def apartment_table(n: int, start: int = 3, strict: bool = False) -> pd.DataFrame:
    return _tag_table(n, start, APARTMENT_COUNTS, lambda tag, k: len(apartments(tag, k)), strict)


def chamber_table(n: int, start: int = 3, strict: bool = False) -> pd.DataFrame:
    return _tag_table(n, start, CHAMBER_COUNTS, lambda tag, k: len(chambers(tag, k)), strict)


def special_table(n: int, start: int = 4, strict: bool = False) -> pd.DataFrame:
    """Universal chambers of |NCP_n| and base chambers of |P_n|."""

    _check_range(start, n)
    rows = [
        {
            "n": k,
            "universal": universal_count(k),
            "universal_enumerated": _enumerated(lambda: len(universal_chambers(k)), strict),
            "base": base_count(k),
            "base_enumerated": _enumerated(lambda: len(base_chambers(k)), strict),
        }
        for k in range(start, n + 1)
    ]
    return _frame(rows, ["universal_enumerated", "base_enumerated"])


def count_table(kind: str, n: int, cox_type: str = "A", strict: bool = False) -> pd.DataFrame:
    """Dispatch for the ``count`` command."""

    if kind == "elements":
        return element_table(n, cox_type, strict=strict)
    if _normalize_type(cox_type) != "A":
        raise DomainError(f"count {kind} exists only for type A")
    if kind == "apartments":
        return apartment_table(n, strict=strict)
    if kind == "chambers":
        return chamber_table(n, strict=strict)
    if kind == "special":
        return special_table(n, strict=strict)
    raise DomainError(f"unknown table {kind!r}; expected one of {', '.join(TABLE_KINDS)}")


def table_mismatches(frame: pd.DataFrame) -> Tuple[str, ...]:
    """Rows where an enumerated count differs from its closed form."""

    out = []
    for column in frame.columns:
        if not column.endswith(ENUMERATED_SUFFIX):
            continue
        closed = column[: -len(ENUMERATED_SUFFIX)]
        for _, row in frame.iterrows():
            value = row[column]
            if not pd.isna(value) and int(value) != int(row[closed]):
                out.append(f"n={row['n']}: {closed} closed form {row[closed]}, enumerated {value}")
    return tuple(out)
