# test_suites.py - suite selection, options, the concurrent runner and report assembly
import json

import pytest

from backend import suites
from backend.config import set_degree_bound, set_epsilon_report, set_jobs
from backend.models import FAIL, PASS, SKIP, CheckResult, Report
from backend.suites import Check, SuiteOptionError, SuiteOptions, UnknownSuiteError, checks_for, run, suite_names


def _run_checks(suite, options, skip=()):
    """Execute a suite's checks one by one, leaving out the ids in skip"""
    return [suites._execute(c, options) for c in checks_for(suite, options) if c.id not in skip]


def test_suite_names():
    assert suite_names() == ["dm-tables", "hassett-strata", "cubic-pairs", "hilbert-flatness", "lattice", "all"]


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError) as err:
        run("everything", SuiteOptions())
    assert "dm-tables" in str(err.value)


# ------------------------------------------------------------
# Options
# ------------------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    {"jobs": 0},
    {"degree_bound": 0},
    {"n": 7},
    {"n": 4},
])
def test_options_are_validated(kwargs):
    with pytest.raises(SuiteOptionError):
        SuiteOptions(**kwargs)


def test_options_from_config():
    set_jobs(3)
    set_degree_bound(12)
    set_epsilon_report(True)
    options = SuiteOptions.from_config(seed=5, jobs=None)
    assert options.jobs == 3
    assert options.seed == 5
    assert options.degree_bound == 12
    assert options.epsilon_report is True


def test_command_line_overrides_config():
    set_jobs(3)
    assert SuiteOptions.from_config(jobs=2).jobs == 2


# ------------------------------------------------------------
# Suites
# ------------------------------------------------------------

def test_dm_tables_suite():
    report = run("dm-tables", SuiteOptions())
    assert report.ok
    assert report.exit_code == 0
    assert report.summary() == {"total": 45, PASS: 45, FAIL: 0, SKIP: 0}
    ids = [c.id for c in report.checks]
    assert ids == sorted(ids)
    assert "dm-tables/eisenstein-36" in ids
    assert "dm-tables/gaussian-06" in ids


def test_hassett_suite():
    report = run("hassett-strata", SuiteOptions())
    assert report.ok, [c.detail for c in report.failed]
    assert report.count(PASS) == 8


def test_hassett_suite_skips_large_bruteforce():
    report = run("hassett-strata", SuiteOptions(n=16))
    skipped = [c.id for c in report.checks if c.status == SKIP]
    assert skipped == ["hassett-strata/census-bruteforce"]
    assert report.ok


def test_epsilon_report_controls_details():
    with_eps = {c.id: c for c in run("hassett-strata", SuiteOptions(epsilon_report=True)).checks}
    without = {c.id: c for c in run("hassett-strata", SuiteOptions(epsilon_report=False)).checks}
    assert "7/4+3ε" in with_eps["hassett-strata/example-tail"].detail
    assert "ε" not in without["hassett-strata/example-tail"].detail
    assert "7/4" in without["hassett-strata/example-tail"].detail


def test_cubic_pairs_checks():
    results = _run_checks("cubic-pairs", SuiteOptions(), skip={"cubic-pairs/generic-smooth"})
    failed = [(r.id, r.detail) for r in results if r.status != PASS]
    assert not failed
    assert len(results) == 9 + 2 * 9


def test_lattice_suite():
    report = run("lattice", SuiteOptions())
    assert report.ok, [c.detail for c in report.failed]
    group = next(c for c in report.checks if c.id == "lattice/group-r")
    assert group.data["order"] == 16
    assert group.data["census"] == {"1": 1, "2": 7, "4": 8}


def test_parallel_run_matches_serial_run():
    serial = run("lattice", SuiteOptions(jobs=1))
    parallel = run("lattice", SuiteOptions(jobs=4))
    assert [c.as_dict() for c in serial.checks] == [c.as_dict() for c in parallel.checks]


def test_raising_check_becomes_a_failure(monkeypatch):
    def boom(options):
        return 1 / 0

    def fine(options):
        return PASS, "fine", None

    monkeypatch.setitem(suites.SUITES, "dm-tables", lambda options: [
        Check("dm-tables/z-boom", "raises", boom),
        Check("dm-tables/a-fine", "passes", fine),
    ])
    report = run("dm-tables", SuiteOptions(jobs=2))
    assert [c.id for c in report.checks] == ["dm-tables/a-fine", "dm-tables/z-boom"]
    assert report.checks[1].status == FAIL
    assert report.checks[1].detail.startswith("ZeroDivisionError")
    assert report.exit_code == 1


@pytest.mark.slow
def test_cubic_pairs_suite():
    report = run("cubic-pairs", SuiteOptions())
    assert report.ok, [c.detail for c in report.failed]


@pytest.mark.slow
def test_hilbert_flatness_suite():
    report = run("hilbert-flatness", SuiteOptions(jobs=3))
    assert report.ok, [c.detail for c in report.failed]
    for check in report.checks:
        if check.data:
            assert check.data["hilbert_polynomial"] == "27*m - 108"


@pytest.mark.slow
def test_all_suite():
    report = run("all", SuiteOptions(jobs=4))
    assert report.ok, [c.detail for c in report.failed]
    assert {c.suite for c in report.checks} == set(suite_names()) - {"all"}


# ------------------------------------------------------------
# Reports
# ------------------------------------------------------------

def test_report_json():
    report = run("lattice", SuiteOptions())
    data = json.loads(report.to_json())
    assert data["schema"] == "1"
    assert data["suite"] == "lattice"
    assert data["options"]["jobs"] == 1
    assert set(data["timing"]) == {c.id for c in report.checks}
    assert "timing" not in json.loads(report.to_json(include_timing=False))


def test_check_result_status_is_validated():
    with pytest.raises(ValueError):
        CheckResult("x/y", "bad", "maybe")


def test_report_orders_checks_by_id():
    report = Report("x", (CheckResult("x/b", "", PASS), CheckResult("x/a", "", SKIP)))
    assert [c.id for c in report.checks] == ["x/a", "x/b"]
    assert report.ok
    assert report.checks[0].suite == "x"
