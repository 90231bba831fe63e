import json

import pytest

from backend.checks import NCP5_WITNESS
from ncpart_cli import build_parser, main


def _run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_dist_prints_every_distance(capsys):
    status, out, _ = _run(capsys, "dist", *NCP5_WITNESS)
    assert status == 0
    assert out.splitlines() == ["d_building=6", "d_pn=6", "d_ncp=7"]


def test_dist_as_json_with_the_hull(capsys):
    status, out, _ = _run(capsys, "--json", "dist", "--hull", *NCP5_WITNESS)
    assert status == 0
    record = json.loads(out)
    assert record["d_ncp"] == 7
    assert record["hull_tag"] == "NCP"


def test_dist_outside_a_subcomplex_prints_a_dash(capsys):
    status, out, _ = _run(capsys, "dist", "flag: 110; 001", "flag: 111; 110")
    assert status == 0
    assert "d_pn=-" in out.splitlines()


def test_parse_errors_exit_with_status_two(capsys):
    status, out, err = _run(capsys, "dist", "(1 2)x", "(1 2)")
    assert status == 2
    assert out == ""
    assert err.startswith("ncpart: error:")
    assert "position 5" in err


def test_check_list(capsys):
    status, out, _ = _run(capsys, "check", "list")
    assert status == 0
    assert any(line.startswith("ncp5-witness: ") for line in out.splitlines())


def test_check_runs_one_check(capsys):
    status, out, _ = _run(capsys, "check", "top-vertices", "--n", "4")
    assert status == 0
    assert out.splitlines()[0] == "top-vertices n=4: pass"


def test_check_json_records(capsys):
    status, out, _ = _run(capsys, "--json", "check", "nc-counts", "--type", "B", "--n", "3")
    assert status == 0
    (record,) = json.loads(out)
    assert record["status"] == "pass"
    assert record["params"] == {"cox_type": "B", "n": 3}


def test_count_table(capsys):
    status, out, _ = _run(capsys, "--json", "count", "chambers", "--n", "4")
    assert status == 0
    rows = json.loads(out)
    assert [row["n"] for row in rows] == [3, 4]
    assert rows[1]["building"] == 21
    assert rows[1]["building_enumerated"] == 21


def test_metric_edge(capsys):
    status, out, _ = _run(capsys, "metric", "edge", "--i", "1", "--j", "3", "--r", "3")
    assert status == 0
    assert "cos_squared=1/9" in out.splitlines()


def test_metric_needs_its_options(capsys):
    status, _, err = _run(capsys, "metric", "holes", "--x", "1")
    assert status == 2
    assert "needs --y" in err


def test_aut_orders(capsys):
    status, out, _ = _run(capsys, "--json", "aut", "--type", "A", "--n", "4", "--group", "skew")
    assert status == 0
    assert json.loads(out)["order"] == 16


def test_enumerate_by_rank(capsys):
    status, out, _ = _run(capsys, "enumerate", "--n", "4", "--rank", "1")
    assert status == 0
    assert len(out.splitlines()) == 6


def test_draw_writes_svg(capsys, tmp_path):
    out = tmp_path / "p.svg"
    status, printed, _ = _run(capsys, "draw", "{1,3,4|2|5,6}", "--out", str(out))
    assert status == 0
    assert printed == ""
    assert out.read_text(encoding="utf-8").startswith("<?xml")


def test_unknown_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args(["frobnicate"])
    assert info.value.code == 2
