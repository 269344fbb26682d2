"""
Tests for the report models and the error hierarchy.
"""

import json

import pytest
from pydantic import ValidationError

from core.data import CheckResult, Provenance, RunReport
from core.errors import (
    CascadeInvariantsError,
    DegenerateSampleError,
    GuardExceededError,
    InadmissibleTypeError,
    OracleScopeError,
    PoleError,
    VerificationError,
)


def _report(**kwargs):
    return RunReport(command=["roots", "A2"], provenance=Provenance(version="0.1.0"), **kwargs)


@pytest.mark.unit
class TestCheckResult:
    """Test the CheckResult model."""

    def test_default_detail(self):
        check = CheckResult(name="cascade.strongly_orthogonal", status="pass")

        assert check.detail == ""

    def test_rejects_unknown_status(self):
        with pytest.raises(ValidationError):
            CheckResult(name="x", status="maybe")

    def test_is_frozen(self):
        check = CheckResult(name="x", status="pass")

        with pytest.raises(ValidationError):
            check.status = "fail"


@pytest.mark.unit
class TestRunReport:
    """Test RunReport bookkeeping and serialization."""

    def test_add_check(self):
        report = _report()

        passed = report.add_check("a", True)
        failed = report.add_check("b", False, "mismatch")

        assert passed.status == "pass"
        assert failed.status == "fail"
        assert failed.detail == "mismatch"
        assert report.failed == [failed]

    def test_skipped_and_discrepancy_are_not_failures(self):
        report = _report()
        report.extend_checks([
            CheckResult(name="golden.row2", status="discrepancy", detail="printed differently"),
            CheckResult(name="invariants.P_vs_Q", status="skipped"),
        ])

        assert report.failed == []
        assert len(report.checks) == 2

    def test_to_json_omits_none(self):
        """Test that unset provenance fields do not appear in the JSON."""
        payload = json.loads(_report().to_json())

        assert payload["provenance"] == {
            "version": "0.1.0",
            "convention": "chevalley-extraspecial-positive",
        }
        assert "algebra" not in payload

    def test_to_json_is_stable(self):
        """Test that identical reports serialize to identical bytes."""
        first = _report(algebra="A2", results={"roots": {"rank": 2, "phi": [2, 1]}})
        second = _report(algebra="A2", results={"roots": {"rank": 2, "phi": [2, 1]}})
        first.add_check("roots.w0", True)
        second.add_check("roots.w0", True)

        assert first.to_json() == second.to_json()

    def test_to_json_round_trips_results(self):
        report = _report(algebra="A2", results={"cascade": {"m": 1, "xis": [[1, 1]]}})
        report.provenance.seed = 7

        payload = json.loads(report.to_json())

        assert payload["algebra"] == "A2"
        assert payload["results"]["cascade"]["xis"] == [[1, 1]]
        assert payload["provenance"]["seed"] == 7


@pytest.mark.unit
class TestErrors:
    """Test the exit status carried by each error family."""

    @pytest.mark.parametrize("error, status", [
        (InadmissibleTypeError, 2),
        (OracleScopeError, 2),
        (GuardExceededError, 3),
        (VerificationError, 1),
        (DegenerateSampleError, 1),
        (PoleError, 1),
    ])
    def test_exit_status(self, error, status):
        exc = error("boom")

        assert isinstance(exc, CascadeInvariantsError)
        assert exc.exit_status == status

    def test_builtin_bases(self):
        """Usage errors are ValueErrors; poles are ZeroDivisionErrors."""
        assert issubclass(InadmissibleTypeError, ValueError)
        assert issubclass(OracleScopeError, ValueError)
        assert issubclass(PoleError, ZeroDivisionError)

    def test_guard_size_report(self):
        exc = GuardExceededError("too big", size_report={"dim_n": 120})

        assert exc.size_report == {"dim_n": 120}
        assert str(exc) == "too big"
        assert GuardExceededError("too big").size_report == {}
