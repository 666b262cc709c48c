import pytest

from xyzdm.verify import SUITE_NAMES, SuiteResult, run_verify


def test_all_suites_pass_small_run():
    report = run_verify(samples=40, seed=1, audit_samples=40)
    assert [s.name for s in report.suites] == list(SUITE_NAMES[:-1])
    assert all(s.passed for s in report.suites)
    assert report.passed  # the audit only reports unless strict


def test_seeded_reports_are_identical():
    a = run_verify(samples=10, seed=7, audit_samples=10).text()
    b = run_verify(samples=10, seed=7, audit_samples=10).text()
    assert a == b


def test_suite_streams_are_independent_of_selection():
    alone = run_verify(samples=10, seed=3, suites=["thermal"]).suites[0]
    together = [s for s in run_verify(samples=10, seed=3, suites=["spectrum", "thermal"]).suites
                if s.name == "thermal"][0]
    assert alone.max_error == together.max_error


def test_audit_finds_conjugated_coherence():
    audit = run_verify(samples=1, seed=0, suites=["audit"], audit_samples=30).audit
    assert audit.checks["replica_concurrence"] <= 1e-9
    assert audit.checks["replica_matrix"] > 1e-9
    matrix_items = [d for d in audit.items if d.check == "replica_matrix"]
    assert audit.conjugate_matches == len(matrix_items) == 30


def test_failing_suite_prints_worst_draw():
    res = SuiteResult("demo", 1e-3)
    res.record(1e-4, "draw A")
    res.record(5e-2, "draw B")
    assert not res.passed and res.worst == "draw B"
    assert res.line().endswith(",FAIL")


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_verify(suites=["bogus"])
