"""Literal syntax for the objects the CLI reads and prints.

* elements: juxtaposed cycles, ``(1 2 3)`` unsigned, ``((1 2 -3))`` paired,
  ``[1 2]`` balanced, ``()`` the identity;
* partitions: ``{1,3,4|2|5,6}``, signed entries for types B and D;
* forests: ``[(1,3),(3,4),(5,6)]``, a labeled tree adds ``@k`` per edge;
* vectors: digit strings ``01100`` (one residue per coordinate);
* subspaces: semicolon-joined rows, ``0`` for the zero subspace;
* chambers: ``flag: v1; v2; ...`` or a reduced word of ``(1 2 ... n)``.

Every parser raises ``ParseError`` carrying the offending position.
"""

from __future__ import annotations

import re
from typing import List, Optional, Sequence, Tuple, Union

from backend.complex import Chamber, chamber_from_vectors, chamber_from_word
from backend.linalg import Subspace, VecFp, format_row, span, zero_subspace
from backend.ncp import BPartition, DPartition, Partition, SetPartition
from backend.perm import (
    Cycle,
    CycleKind,
    Element,
    _normalize_type,
    check_element,
    format_element,
    identity,
    word_product,
)
from backend.trees import Edge, Forest, LabeledTree
from utils.errors import DomainError, ParseError

_INT = re.compile(r"-?\d+")

_CLOSERS = {"((": "))", "(": ")", "[": "]"}
_KINDS = {"((": CycleKind.PAIRED, "(": CycleKind.UNSIGNED, "[": CycleKind.BALANCED}


# --------------------------------------------------------------------------
# cycles and elements


def _skip_space(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _entries(text: str, start: int, body: str) -> Tuple[int, ...]:
    out: List[int] = []
    pos = 0
    while pos < len(body):
        if body[pos].isspace():
            pos += 1
            continue
        match = _INT.match(body, pos)
        if match is None:
            raise ParseError("expected an integer", text, start + pos)
        out.append(int(match.group()))
        pos = match.end()
    return tuple(out)


def _scan_cycles(text: str) -> List[Tuple[int, Cycle]]:
    found: List[Tuple[int, Cycle]] = []
    pos = _skip_space(text, 0)
    if pos == len(text):
        raise ParseError("empty cycle literal", text, 0)
    while pos < len(text):
        opener = "((" if text.startswith("((", pos) else text[pos]
        if opener not in _CLOSERS:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        closer = _CLOSERS[opener]
        end = text.find(closer, pos + len(opener))
        if end < 0:
            raise ParseError(f"unclosed {opener!r}", text, pos)
        body_start = pos + len(opener)
        entries = _entries(text, body_start, text[body_start:end])
        if entries:
            try:
                found.append((pos, Cycle.make(_KINDS[opener], entries)))
            except DomainError as exc:
                raise ParseError(str(exc), text, pos) from exc
        elif opener != "(":
            raise ParseError(f"empty {opener}{closer} cycle", text, pos)
        pos = _skip_space(text, end + len(closer))
    return found


def parse_cycles(text: str) -> Tuple[Cycle, ...]:
    """Cycles in the order written; ``()`` contributes nothing."""

    return tuple(cycle for _, cycle in _scan_cycles(text))


def _letters(cox_type: str, n: Optional[int], text: str) -> Tuple[str, int, List[Element]]:
    kind = _normalize_type(cox_type)
    scanned = _scan_cycles(text)
    n = max((max(c.support) for _, c in scanned), default=1) if n is None else n
    letters: List[Element] = []
    for pos, cycle in scanned:
        if (kind == "A") != (cycle.kind is CycleKind.UNSIGNED):
            expected = "(...)" if kind == "A" else "((...)) or [...]"
            raise ParseError(f"type {kind} expects {expected} cycles", text, pos)
        try:
            letters.append(cycle.element(n))
        except DomainError as exc:
            raise ParseError(str(exc), text, pos) from exc
    return kind, n, letters


def parse_element(cox_type: str, text: str, n: Optional[int] = None) -> Element:
    """Product of the written cycles, multiplied right to left."""

    kind, n, letters = _letters(cox_type, n, text)
    w = word_product(kind, n, letters) if letters else identity(kind, n)
    check_element(kind, w)
    return w


def parse_word(cox_type: str, text: str, n: Optional[int] = None) -> Tuple[Element, ...]:
    """One letter per written cycle."""

    return tuple(_letters(cox_type, n, text)[2])


def format_word(letters: Sequence[Element]) -> str:
    return "".join(format_element(t) for t in letters) or "()"


# --------------------------------------------------------------------------
# partitions


def parse_partition(text: str, cox_type: str = "A", n: Optional[int] = None) -> Partition:
    """Blocks separated by ``|`` inside braces; points not mentioned become singletons when ``n`` is given."""

    kind = _normalize_type(cox_type)
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ParseError("a partition is written {...|...}", text, 0)
    offset = text.index("{") + 1
    blocks: List[Tuple[int, ...]] = []
    pos = 0
    inner = body[1:-1]
    for chunk in inner.split("|"):
        entries = []
        for token in chunk.split(","):
            stripped = token.strip()
            if not re.fullmatch(r"-?\d+", stripped or "x"):
                raise ParseError(f"bad partition entry {stripped!r}", text, offset + pos)
            entries.append(int(stripped))
            pos += len(token) + 1
        blocks.append(tuple(entries))
    points = [x for b in blocks for x in b]
    if kind == "A" and any(x < 1 for x in points):
        raise ParseError("type A partitions use positive points", text, offset)
    size = max(abs(x) for x in points) if n is None else n
    mentioned = {x for x in points}
    if kind == "A":
        blocks += [(i,) for i in range(1, size + 1) if i not in mentioned]
    else:
        blocks += [(s * i,) for i in range(1, size + 1) for s in (1, -1) if s * i not in mentioned]
    try:
        if kind == "A":
            return SetPartition(size, tuple(blocks))
        if kind == "B":
            return BPartition(size, tuple(blocks))
        return DPartition(size, tuple(blocks))
    except DomainError as exc:
        raise ParseError(str(exc), text, 0) from exc


def format_partition(partition: Partition) -> str:
    return "{" + "|".join(",".join(str(x) for x in block) for block in partition.blocks) + "}"


# --------------------------------------------------------------------------
# forests and labeled trees

_EDGE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)(?:\s*@\s*(\d+))?")


def _edge_items(text: str) -> List[Tuple[Edge, Optional[int]]]:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("a forest is written [(i,j),...]", text, 0)
    start = text.index("[") + 1
    inner = text[start: text.rindex("]")]
    items: List[Tuple[Edge, Optional[int]]] = []
    pos = 0
    while pos < len(inner):
        if inner[pos].isspace() or inner[pos] == ",":
            pos += 1
            continue
        match = _EDGE.match(inner, pos)
        if match is None:
            raise ParseError("expected (i,j) or (i,j)@k", text, start + pos)
        a, b = int(match.group(1)), int(match.group(2))
        try:
            edge = Edge(min(a, b), max(a, b))
        except DomainError as exc:
            raise ParseError(str(exc), text, start + pos) from exc
        label = int(match.group(3)) if match.group(3) else None
        items.append((edge, label))
        pos = match.end()
    return items


def parse_forest(text: str, n: Optional[int] = None) -> Forest:
    items = _edge_items(text)
    if any(label is not None for _, label in items):
        raise ParseError("labels are only allowed in labeled trees", text, text.find("@"))
    size = max((e.j for e, _ in items), default=1) if n is None else n
    try:
        return Forest(size, frozenset(e for e, _ in items))
    except DomainError as exc:
        raise ParseError(str(exc), text, 0) from exc


def parse_labeled_tree(text: str, n: Optional[int] = None) -> LabeledTree:
    items = _edge_items(text)
    if any(label is None for _, label in items):
        raise ParseError("every edge of a labeled tree needs @k", text, 0)
    labels = sorted(label for _, label in items)
    if labels != list(range(1, len(items) + 1)):
        raise ParseError(f"labels {labels} are not 1..{len(items)}", text, 0)
    size = max((e.j for e, _ in items), default=1) if n is None else n
    ordered = tuple(e for e, _ in sorted(items, key=lambda item: item[1]))
    try:
        return LabeledTree(Forest(size, frozenset(ordered)), ordered)
    except DomainError as exc:
        raise ParseError(str(exc), text, 0) from exc


def format_forest(forest: Forest) -> str:
    return "[" + ",".join(f"({e.i},{e.j})" for e in forest.sorted_edges()) + "]"


def format_labeled_tree(tree: LabeledTree) -> str:
    label = {e: k for k, e in enumerate(tree.labeling, start=1)}
    return "[" + ",".join(f"({e.i},{e.j})@{label[e]}" for e in tree.tree.sorted_edges()) + "]"


# --------------------------------------------------------------------------
# vectors, subspaces, chambers


def parse_vector(text: str, p: int = 2) -> VecFp:
    body = text.strip()
    if not body:
        raise ParseError("empty vector", text, 0)
    offset = text.index(body[0])
    coords = []
    for k, ch in enumerate(body):
        if not ch.isdigit() or int(ch) >= p:
            raise ParseError(f"{ch!r} is not a residue mod {p}", text, offset + k)
        coords.append(int(ch))
    return VecFp(p, tuple(coords))


def format_vector(v: VecFp) -> str:
    return format_row(v.p, v.coords)


def parse_subspace(text: str, p: int = 2, m: Optional[int] = None) -> Subspace:
    body = text.strip()
    if body == "0":
        if m is None:
            raise ParseError("the zero subspace needs an explicit ambient dimension", text, 0)
        return zero_subspace(p, m)
    rows = []
    pos = 0
    for chunk in text.split(";"):
        try:
            rows.append(parse_vector(chunk, p))
        except ParseError as exc:
            raise ParseError(str(exc).split(":")[0], text, pos + (exc.position or 0)) from exc
        pos += len(chunk) + 1
    dims = {v.m for v in rows}
    if len(dims) != 1 or (m is not None and dims != {m}):
        raise ParseError(f"rows of different lengths {sorted(dims)}", text, 0)
    return span(p, dims.pop(), rows)


def format_subspace(subspace: Subspace) -> str:
    return str(subspace)


def parse_chamber(text: str, n: Optional[int] = None) -> Chamber:
    """``flag: v1; v2; ...`` with ``C_k`` spanned by ``v1..vk``, or a reduced word of ``(1 2 ... n)``."""

    body = text.strip()
    try:
        if body.startswith("flag:"):
            start = text.index("flag:") + len("flag:")
            vectors = []
            pos = start
            for chunk in text[start:].split(";"):
                try:
                    vectors.append(parse_vector(chunk))
                except ParseError as exc:
                    raise ParseError("bad flag vector", text, pos + (exc.position or 0)) from exc
                pos += len(chunk) + 1
            dims = {v.m for v in vectors}
            if len(dims) != 1:
                raise ParseError(f"flag vectors of different lengths {sorted(dims)}", text, start)
            size = dims.pop() + 1
            if n is not None and n != size:
                raise ParseError(f"flag vectors have length {size - 1}, expected {n - 1}", text, start)
            return chamber_from_vectors(size, [v.bits for v in vectors])
        return chamber_from_word(parse_word("A", body, n))
    except DomainError as exc:
        raise ParseError(str(exc), text, 0) from exc


def format_chamber(chamber: Chamber) -> str:
    return str(chamber)


def parse_object(text: str, cox_type: str = "A") -> Union[Partition, Forest, Element]:
    """Dispatch on the opening bracket: partition, forest or element."""

    body = text.strip()
    if body.startswith("{"):
        return parse_partition(body, cox_type)
    if body.startswith("[("):
        return parse_forest(body)
    return parse_element(cox_type, body)
