import pytest

from backend.checks import CheckReport, Status, list_checks, run_all, run_check
from utils.errors import DomainError, VerificationError


def test_registry_lists_every_check():
    names = [name for name, _ in list_checks()]
    assert names == sorted(names)
    for expected in ("nc-counts", "ncp5-witness", "ncp6-witness", "metric-holes", "aut-orders", "strands"):
        assert expected in names


@pytest.mark.parametrize(
    "name,params",
    [
        ("nc-counts", {"cox_type": "A", "n": 5}),
        ("nc-counts", {"cox_type": "D", "n": 4}),
        ("top-vertices", {"n": 5}),
        ("metric-holes", {"r_max": 6}),
        ("ncp5-witness", {}),
        ("aut-orders", {"cox_type": "A", "n": 4}),
        ("embedding", {"cox_type": "B", "n": 3, "p": 3}),
        ("dist-pn", {"n": 4}),
        ("hulls", {"n": 4}),
    ],
)
def test_checks_pass(name, params):
    report = run_check(name, **params)
    assert report.status is Status.PASS, str(report)
    assert report.ok


def test_defaults_fill_missing_params():
    report = run_check("top-vertices", n=None)
    assert report.params == {"n": 5}
    assert report.details == ("15 of 15",)


def test_report_only_checks_never_fail():
    report = run_check("strands")
    assert report.status is Status.REPORT
    assert report.ok
    assert len(report.details) == 6


def test_unknown_checks_and_params():
    with pytest.raises(DomainError, match="unknown check"):
        run_check("no-such-check")
    with pytest.raises(DomainError, match="not \\['q'\\]"):
        run_check("top-vertices", q=3)


def test_failing_report_needs_a_counterexample():
    with pytest.raises(VerificationError):
        CheckReport("nc-counts", {}, Status.FAIL)
    report = CheckReport("nc-counts", {"n": 3}, "fail", ["rank 1: found 2, expected 3"])
    assert not report.ok
    assert report.as_record() == {
        "check": "nc-counts",
        "params": {"n": 3},
        "status": "fail",
        "details": ["rank 1: found 2, expected 3"],
    }
    assert str(report) == "nc-counts n=3: fail\n  rank 1: found 2, expected 3"


@pytest.mark.slow
def test_run_all_small():
    reports = run_all(small=True)
    failing = [str(r) for r in reports if not r.ok]
    assert failing == []
