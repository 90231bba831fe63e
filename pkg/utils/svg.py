"""SVG drawings: pictorial partitions on their polygon and Hasse diagrams of NC.

Figures are drawn with matplotlib on the non-interactive Agg canvas and saved
as SVG 1.1. The date stamp is dropped and the id salt is fixed, so the same
object always gives the same bytes.
"""

from __future__ import annotations

import io
import logging
import math
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from backend.ncp import BPartition, DPartition, Partition, hasse_graph, polygon_position  # noqa: E402
from backend.perm import _normalize_type, format_element  # noqa: E402

logger = logging.getLogger(__name__)

SVG_SALT = "ncpart"
BLOCK_COLOR = "#9ecae1"
EDGE_COLOR = "#08519c"
RADIUS = 1.0
LABEL_RADIUS = 1.15

Point = Tuple[float, float]

CENTRE: Point = (0.0, 0.0)


def _kind_of(partition: Partition) -> str:
    if isinstance(partition, DPartition):
        return "D"
    if isinstance(partition, BPartition):
        return "B"
    return "A"


def polygon_points(cox_type: str, n: int) -> Dict[int, Point]:
    """Point coordinates, clockwise from the top; in type D ``±n`` sit at the centre."""

    kind = _normalize_type(cox_type)
    position = polygon_position(kind, n)
    if kind == "A":
        labels = list(range(1, n + 1))
    else:
        m = n if kind == "B" else n - 1
        labels = list(range(1, m + 1)) + [-x for x in range(1, m + 1)]
    corners = len(labels)
    points = {}
    for x in labels:
        angle = math.pi / 2 - 2 * math.pi * position(x) / corners
        points[x] = (RADIUS * math.cos(angle), RADIUS * math.sin(angle))
    if kind == "D":
        points[n] = points[-n] = CENTRE
    return points


def _block_outline(block: Tuple[int, ...], points: Dict[int, Point], position) -> List[Point]:
    """Boundary points in clockwise order, then the centre when the block holds exactly one of ``±n``."""

    boundary = sorted((x for x in block if points[x] != CENTRE), key=position)
    outline = [points[x] for x in boundary]
    if len(block) - len(boundary) == 1:
        outline.append(CENTRE)
    return outline


def partition_figure(partition: Partition) -> Figure:
    """Polygon with every non-trivial block drawn as a filled polygon, or a segment for two points."""

    kind = _kind_of(partition)
    n = partition.n
    points = polygon_points(kind, n)
    position = polygon_position(kind, n)
    fig, ax = plt.subplots(figsize=(4, 4))
    ax.set_aspect("equal")
    ax.axis("off")
    ring = [p for x, p in sorted(points.items(), key=lambda item: position(item[0])) if p != CENTRE]
    ax.add_patch(Polygon(ring, closed=True, fill=False, edgecolor="#bdbdbd", linewidth=0.8))
    for block in partition.blocks:
        outline = _block_outline(block, points, position)
        if len(outline) >= 3:
            ax.add_patch(Polygon(outline, closed=True, facecolor=BLOCK_COLOR, edgecolor=EDGE_COLOR, linewidth=1.2))
        elif len(outline) == 2:
            (x0, y0), (x1, y1) = outline
            ax.plot([x0, x1], [y0, y1], color=EDGE_COLOR, linewidth=1.6)
    for x, (px, py) in sorted(points.items()):
        if (px, py) == CENTRE:
            continue
        ax.plot([px], [py], "o", color="black", markersize=3)
        ax.annotate(str(x), (px * LABEL_RADIUS, py * LABEL_RADIUS), ha="center", va="center", fontsize=9)
    if kind == "D":
        ax.plot([0.0], [0.0], "o", color="black", markersize=3)
        ax.annotate(f"±{n}", (0.0, -0.12), ha="center", va="center", fontsize=8)
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)
    return fig


def hasse_layout(cox_type: str, n: int) -> Tuple[nx.DiGraph, Dict[object, Point]]:
    """Nodes at height ``rank``, spread evenly along each level in canonical order."""

    graph = hasse_graph(cox_type, n)
    levels: Dict[int, List[object]] = {}
    for node, data in graph.nodes(data=True):
        levels.setdefault(data["rank"], []).append(node)
    pos: Dict[object, Point] = {}
    for r, nodes in levels.items():
        width = len(nodes)
        for k, node in enumerate(nodes):
            pos[node] = (k - (width - 1) / 2, float(r))
    return graph, pos


def hasse_figure(cox_type: str, n: int) -> Figure:
    graph, pos = hasse_layout(cox_type, n)
    width = max(sum(1 for _, y in pos.values() if y == r) for r in {y for _, y in pos.values()})
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * width), 1.2 * (len({y for _, y in pos.values()}) + 1)))
    ax.axis("off")
    labels = {w: format_element(w) for w in graph.nodes}
    nx.draw_networkx_edges(graph, pos, ax=ax, arrows=False, edge_color="#969696")
    nx.draw_networkx_nodes(graph, pos, ax=ax, node_size=60, node_color=EDGE_COLOR)
    nx.draw_networkx_labels(graph, {w: (x, y + 0.18) for w, (x, y) in pos.items()}, labels, ax=ax, font_size=6)
    return fig


def to_svg(fig: Figure) -> str:
    """Serialise and close the figure."""

    buffer = io.StringIO()
    with plt.rc_context({"svg.hashsalt": SVG_SALT, "svg.fonttype": "none"}):
        fig.savefig(buffer, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)
    return buffer.getvalue()


def write_svg(svg: str, out: Optional[Union[str, Path]] = None) -> str:
    """Write to ``out`` (UTF-8) when given; always return the text."""

    if out is not None:
        Path(out).write_text(svg, encoding="utf-8")
        logger.info("wrote %s (%d bytes)", out, len(svg))
    return svg


def draw_partition(partition: Partition, out: Optional[Union[str, Path]] = None) -> str:
    return write_svg(to_svg(partition_figure(partition)), out)


def draw_hasse(cox_type: str, n: int, out: Optional[Union[str, Path]] = None) -> str:
    return write_svg(to_svg(hasse_figure(cox_type, n)), out)
