import math

import pytest
import sympy

from backend.metric import (
    GAMMA_2_RANKS,
    GAMMA_3_RANKS,
    barycenter_edge_length,
    edge_cos_squared,
    edge_length,
    edge_table,
    exact_cos_total,
    opposite_link_path_length,
    path_length,
)
from utils.errors import DomainError


def test_edge_lengths_in_rank_three():
    assert edge_cos_squared(1, 3, 3) == sympy.Rational(1, 9)
    assert edge_length(1, 3, 3) == pytest.approx(math.acos(1 / 3))
    assert edge_length(1, 2, 3) == pytest.approx(math.acos(1 / math.sqrt(3)))


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_closed_form_matches_barycentres(r):
    for e in edge_table(r):
        assert e.value == pytest.approx(barycenter_edge_length(e.i, e.j, r), abs=1e-10)


def test_edge_table_size():
    assert len(edge_table(5)) == 10


@pytest.mark.parametrize("x,y,r", [(1, 2, 3), (1, 3, 4), (2, 5, 7), (3, 4, 12)])
def test_opposite_link_paths_have_length_pi(x, y, r):
    assert abs(opposite_link_path_length(x, y, r).total - math.pi) < 1e-12
    assert exact_cos_total(x, y, r) == -1


def test_hull_strands_sum_to_two_pi():
    assert path_length(GAMMA_2_RANKS, 3) == pytest.approx(2 * math.acos(1 / 3))
    assert path_length(GAMMA_2_RANKS, 3) + path_length(GAMMA_3_RANKS, 3) == pytest.approx(2 * math.pi, abs=1e-12)


def test_rank_arguments_are_checked():
    with pytest.raises(DomainError):
        edge_length(2, 2, 3)
    with pytest.raises(DomainError):
        edge_length(1, 4, 3)
    with pytest.raises(DomainError, match="equal rank"):
        path_length([1, 1, 2], 3)
