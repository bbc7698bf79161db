"""Tests for the invariant spaces and their exact matrix representations."""

from fractions import Fraction

import pytest

from src.algebra.mpoly import MPoly
from src.core.exceptions import InvarianceError
from src.operators.diffop import Chart
from src.qes import (
    determinant,
    invariance_check,
    kernel,
    matrix_of,
    particular_integral_check,
    pn_basis,
    qn_basis,
    rank,
)


class TestBases:
    """Monomial bases of P_n and Q_n."""

    @pytest.mark.parametrize("n", [0, 1, 2, 5])
    def test_pn_dimension(self, n):
        assert pn_basis(n).dimension == (n + 1) * (n + 2) // 2

    def test_qn_dimension(self):
        # p + 2q <= 4
        assert qn_basis(4).dimension == 9

    def test_grade_ordering(self):
        basis = pn_basis(3)
        grades = [basis.grade(i) for i in range(len(basis))]
        assert grades == sorted(grades)

    def test_split_reports_outside_monomials(self, syms):
        coords, outside = pn_basis(1).split(syms["x"] + syms["x"] ** 2)
        assert outside == ["x^2"]
        assert len(coords) == 1

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            pn_basis(-1)


class TestInvariance:
    """P_n is preserved by h and k exactly at nu = -n/3."""

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_hamiltonian_preserves_pn(self, h_xy, n):
        assert invariance_check(h_xy, pn_basis(n)).invariant

    def test_generic_nu_leaks(self, h_xy):
        result = invariance_check(h_xy, pn_basis(2), {"nu": Fraction(1, 7)})
        assert not result.invariant
        assert result.describe()

    def test_matrix_of_leaking_operator_raises(self, h_xy):
        with pytest.raises(InvarianceError):
            matrix_of(h_xy, pn_basis(2), {"nu": Fraction(1, 7)})

    def test_g2_hamiltonian_preserves_qn(self, h_g2):
        assert invariance_check(h_g2, qn_basis(3)).invariant

    def test_chart_mismatch(self, h_g2):
        with pytest.raises(InvarianceError):
            matrix_of(h_g2, pn_basis(1))

    def test_matrices_of_h_and_k_commute(self, h_xy, k_xy):
        basis = pn_basis(2)
        assert matrix_of(h_xy, basis).commutes_with(matrix_of(k_xy, basis))

    def test_specialized_matrix_is_numeric(self, h_xy):
        rep = matrix_of(h_xy, pn_basis(1)).specialize({"tau": 1, "mu": 0})
        assert rep.is_numeric()
        assert len(rep.to_fractions()) == 3
        assert rep.to_dict()["basis"] == pn_basis(1).labels()

    def test_symbolic_matrix_refuses_fractions(self, h_xy):
        with pytest.raises(ValueError):
            matrix_of(h_xy, pn_basis(2)).to_fractions()

    def test_n1_matrix_is_zero(self, h_xy):
        rep = matrix_of(h_xy, pn_basis(1))
        assert rep.is_numeric()
        assert rep.to_fractions() == [[0] * 3 for _ in range(3)]


class TestParticularIntegral:
    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_xy(self, n):
        report = particular_integral_check(n, Chart.XY)
        assert report.passed
        assert report.identity == f"particular_integral_xy_{n}"

    def test_uv(self):
        report = particular_integral_check(2, Chart.UV)
        assert report.passed
        assert report.details["dimension"] == qn_basis(2).dimension


class TestExactLinearAlgebra:
    """Fraction-free elimination over Q[tau, mu]."""

    def test_kernel_of_rank_one(self):
        assert kernel([[1, 2], [2, 4]]) == [[MPoly.const(2), MPoly.const(-1)]]

    def test_kernel_of_full_rank_is_empty(self):
        assert kernel([[1, 0], [0, 1]]) == []

    def test_determinant(self, syms):
        tau = syms["tau"]
        assert determinant([[1, 2], [3, 4]]) == -2
        assert determinant([[tau, 1], [1, tau]]) == tau**2 - 1

    def test_rank_with_parameters(self, syms):
        tau = syms["tau"]
        assert rank([[tau, 1], [tau**2, tau]]) == 1
