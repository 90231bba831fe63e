import math

import pytest

from utils.notation import parse_partition
from utils.svg import (
    CENTRE,
    draw_hasse,
    draw_partition,
    hasse_layout,
    partition_figure,
    polygon_points,
    to_svg,
)


def test_polygon_starts_at_the_top():
    points = polygon_points("A", 6)
    assert points[1] == pytest.approx((0.0, 1.0))
    assert points[4] == pytest.approx((0.0, -1.0))
    assert all(math.hypot(*p) == pytest.approx(1.0) for p in points.values())


def test_type_d_puts_the_last_pair_in_the_centre():
    points = polygon_points("D", 4)
    assert points[4] == points[-4] == CENTRE
    assert len(points) == 8


def test_blocks_become_polygons_and_segments():
    fig = partition_figure(parse_partition("{1,3,4|2|5,6}"))
    (ax,) = fig.axes
    # boundary ring and the {1,3,4} triangle; {5,6} is a segment
    assert len(ax.patches) == 2


def test_hasse_layout_by_rank():
    graph, pos = hasse_layout("A", 4)
    assert graph.number_of_nodes() == 14
    assert sorted({y for _, y in pos.values()}) == [0.0, 1.0, 2.0, 3.0]
    assert [x for x, y in pos.values() if y == 0.0] == [0.0]


def test_svg_output_is_deterministic():
    partition = parse_partition("{1,-2|-1,2}", "B")
    first = to_svg(partition_figure(partition))
    second = to_svg(partition_figure(partition))
    assert first.startswith("<?xml")
    assert "<svg" in first
    assert first == second


def test_drawings_are_written(tmp_path):
    out = tmp_path / "nc4.svg"
    text = draw_hasse("A", 4, out)
    assert out.read_text(encoding="utf-8") == text
    assert draw_partition(parse_partition("{1,2,3}")).startswith("<?xml")
