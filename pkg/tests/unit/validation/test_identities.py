"""Tests for the exact identity suite."""

import pytest

from src.core.constants import DISCREPANCY_WHITELIST
from src.core.exceptions import ConfigError
from src.models import a2
from src.operators.diffop import Chart, DiffOp, commutator
from src.validation import IdentityVerifier, Status, VerificationReport


@pytest.fixture
def verifier():
    return IdentityVerifier()


class TestIdentityVerifier:
    """Statuses of the cheap identities and verifier bookkeeping."""

    @pytest.mark.parametrize("identity", ["z2_symmetry", "h_uv_restriction", "k_commutes"])
    def test_exact_pass(self, verifier, identity):
        report = verifier.verify(identity)
        assert report.identity == identity
        assert report.status is Status.EXACT_PASS
        assert report.residual_terms == []

    def test_k_commutes_with_sign_note(self, verifier):
        report = verifier.verify("k_commutes")
        assert report.status is Status.EXACT_PASS
        assert report.details["zero_order_sign"] == "+"
        assert any("opposite sign" in note for note in report.notes)

    def test_stated_zero_order_sign_breaks_commutation(self, h_xy, k_xy):
        zero_order = DiffOp(Chart.XY, {(0, 0): a2.k_xy_zero_order()})
        assert commutator(h_xy, k_xy).is_zero()
        assert not commutator(h_xy, k_xy - 2 * zero_order).is_zero()

    def test_k_is_odd(self, verifier):
        report = verifier.verify("k_parity")
        assert report.status is Status.PASS_WITH_DISCREPANCIES
        assert report.details["parity"] == "odd"
        assert report.details["square_even"] is True
        assert "k_parity" in DISCREPANCY_WHITELIST

    def test_sqrt_d_general_is_eigenfunction(self, verifier):
        report = verifier.verify("sqrtD_general")
        assert report.passed
        assert "computed" in report.details

    def test_unknown_identity(self, verifier):
        with pytest.raises(ConfigError):
            verifier.verify("no_such_identity")

    def test_stats_count_statuses(self, verifier):
        verifier.verify("z2_symmetry")
        verifier.verify("k_parity")
        assert verifier.get_stats() == {"ExactPass": 1, "PassWithDiscrepancies": 1}


class TestVerificationReport:
    """Residuals become data, not exceptions."""

    def test_zero_residual_passes(self):
        report = VerificationReport.from_residual("demo", DiffOp.zero(Chart.XY))
        assert report.passed
        assert report.status is Status.EXACT_PASS

    def test_nonzero_residual_fails(self, syms):
        report = VerificationReport.from_residual("demo", DiffOp.partial(1, 0, Chart.XY, syms["x"]))
        assert not report.passed
        assert report.residual_terms == [(1, 0, "x")]

    def test_to_dict_is_json_ready(self):
        data = VerificationReport(identity="demo", status=Status.PASS_WITH_DISCREPANCIES, notes=["n"]).to_dict()
        assert data["status"] == "PassWithDiscrepancies"
        assert data["notes"] == ["n"]
