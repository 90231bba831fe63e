import pandas as pd
import pytest

from utils import config
from utils.errors import DomainError, GuardExceeded
from utils.tables import (
    apartment_table,
    chamber_table,
    count_table,
    element_table,
    frame_count,
    partition_count,
    special_table,
    subspace_count,
    table_mismatches,
)


def _row(frame, n):
    return frame.loc[frame["n"] == n].iloc[0]


def test_closed_forms():
    assert partition_count(5) == 52
    assert subspace_count(5) == 67
    assert frame_count(4) == 28
    assert frame_count(5) == 840


def test_element_table_type_a():
    frame = element_table(5)
    assert list(frame["n"]) == [1, 2, 3, 4, 5]
    row = _row(frame, 5)
    assert (row["ncp"], row["p"], row["lambda"]) == (42, 52, 67)
    assert row["ncp_enumerated"] == 42
    assert not frame["flagged"].any()
    assert table_mismatches(frame) == ()


@pytest.mark.parametrize("cox_type,n,expected", [("B", 4, 70), ("D", 4, 50)])
def test_element_table_signed_types(cox_type, n, expected):
    frame = element_table(n, cox_type)
    assert _row(frame, n)["nc"] == expected
    assert table_mismatches(frame) == ()


def test_apartment_table():
    frame = apartment_table(4)
    row = _row(frame, 4)
    assert (row["ncp"], row["pn"], row["building"]) == (12, 16, 28)
    assert table_mismatches(frame) == ()


def test_chamber_table():
    frame = chamber_table(5)
    row = _row(frame, 5)
    assert (row["ncp"], row["pn"], row["building"]) == (125, 180, 315)
    assert table_mismatches(frame) == ()


def test_special_table():
    frame = special_table(5)
    assert list(frame["universal"]) == [8, 20]
    assert list(frame["base"]) == [12, 60]
    assert table_mismatches(frame) == ()


@pytest.fixture
def small_lattice_guard(monkeypatch):
    table = dict(config.DEFAULT_LIMITS, subspace_lattice=3)
    monkeypatch.setattr(config, "_ACTIVE", config.Limits(table=table))


def test_guard_hit_keeps_the_closed_form(small_lattice_guard):
    frame = element_table(5)
    row = _row(frame, 5)
    assert row["flagged"]
    assert pd.isna(row["ncp_enumerated"])
    assert row["ncp"] == 42
    assert not _row(frame, 4)["flagged"]
    assert table_mismatches(frame) == ()


def test_strict_tables_raise_on_guards(small_lattice_guard):
    with pytest.raises(GuardExceeded):
        element_table(5, strict=True)


def test_mismatches_are_reported():
    frame = chamber_table(3)
    frame.loc[0, "ncp_enumerated"] = 4
    (message,) = table_mismatches(frame)
    assert "closed form 3, enumerated 4" in message


def test_count_table_dispatch():
    assert list(count_table("chambers", 4)["n"]) == [3, 4]
    with pytest.raises(DomainError, match="only for type A"):
        count_table("chambers", 4, "B")
    with pytest.raises(DomainError, match="unknown table"):
        count_table("trees", 4)
    with pytest.raises(DomainError, match="need n >= 3"):
        chamber_table(2)
