"""Tests for characteristic polynomials, roots and eigenfunctions."""

import math
from fractions import Fraction

import pytest

from src.algebra.mpoly import MPoly
from src.core.exceptions import ConfigError
from src.qes import kernel, pn_basis
from src.spectral import (
    QuadraticSurd,
    assemble_eigenfunction,
    cayley_hamilton_holds,
    char_poly,
    eigenfunctions,
    factor_multiplicity,
    reference_sextic_check,
    sector_matrix,
    sextic,
    solve_rational,
    spectrum,
)
from src.spectral.roots import cluster_roots, residual_ok
from src.validation import Status


def _spectrum_set(roots):
    return sorted((round(r.value.real, 10), round(r.value.imag, 10), r.multiplicity) for r in roots)


class TestCharPoly:
    """Division-free characteristic polynomials over Q[tau, mu]."""

    def test_two_by_two(self):
        # det(E - [[1, 2], [3, 4]]) = E^2 - 5E - 2
        assert char_poly([[1, 2], [3, 4]]).coefficients == [1, -5, -2]

    def test_cayley_hamilton_symbolic(self, syms):
        m = [[syms["tau"], 1], [syms["mu"], 0]]
        assert cayley_hamilton_holds(m, char_poly(m))

    def test_sextic_degree(self):
        assert sextic().degree == 6

    def test_n1_sector_has_three_zero_modes(self):
        matrix = sector_matrix("a2", 1, {})
        assert len(kernel(matrix.entries, 3)) == 3

    def test_n2_is_cube_of_first_quadratic(self, syms):
        poly = char_poly(sector_matrix("a2", 2, {}))
        first = [MPoly.one(), 4 * syms["tau"], 4 * syms["mu"]]
        assert factor_multiplicity(poly, first) == 3

    def test_n2_trace(self, syms):
        poly = char_poly(sector_matrix("a2", 2, {}))
        assert poly.trace() == -12 * syms["tau"]


class TestReferenceSextic:
    def test_comparison_is_a_discrepancy(self):
        report = reference_sextic_check()
        assert report.status is Status.PASS_WITH_DISCREPANCIES
        assert sorted(report.details["factor_multiplicities"].values()) == [0, 0, 3]
        assert report.details["fully_factored"] is True


class TestRoots:
    """Exact multiplicities and closed forms."""

    def test_rational_roots(self):
        roots = solve_rational([Fraction(1), Fraction(-3), Fraction(2)])
        assert [r.exact for r in roots] == [QuadraticSurd(Fraction(1)), QuadraticSurd(Fraction(2))]

    def test_reference_sextic_at_trigonometric_point(self):
        coefficients = sextic().specialize({"tau": 1, "mu": 0}).rational_coefficients()
        roots = solve_rational(coefficients)
        expected = sorted([0.0, -2.0, -4.0, -6.0, -6 - 2 * math.sqrt(5), -6 + 2 * math.sqrt(5)])
        got = sorted(r.value.real for r in roots)
        assert all(r.multiplicity == 1 for r in roots)
        assert got == pytest.approx(expected, abs=1e-12)
        surds = [r.exact for r in roots if r.exact is not None and r.exact.b]
        assert {str(s) for s in surds} == {"-6 - 2*sqrt(5)", "-6 + 2*sqrt(5)"}

    @pytest.mark.parametrize("tau", [Fraction(1), Fraction(2), Fraction(1, 2)])
    def test_reference_sextic_degenerate_point(self, tau):
        # mu = tau^2: E+ and E- of the first pair coincide at -2 tau
        coefficients = sextic().specialize({"tau": tau, "mu": tau**2}).rational_coefficients()
        t = float(tau)
        expected = sorted([(-10 * t, 0.0, 1), (-4 * t, 0.0, 2), (-2 * t, 0.0, 3)])
        assert _spectrum_set(solve_rational(coefficients)) == expected

    def test_reference_sextic_purely_imaginary(self):
        coefficients = sextic().specialize({"tau": 0, "mu": 1}).rational_coefficients()
        assert _spectrum_set(solve_rational(coefficients)) == [(0.0, -2.0, 3), (0.0, 2.0, 3)]

    def test_residual_check(self):
        coefficients = [Fraction(1), Fraction(0), Fraction(-2)]
        roots = [r.value for r in solve_rational(coefficients)]
        assert residual_ok(coefficients, roots)
        assert not residual_ok(coefficients, [1.5])

    def test_clustering_of_float_roots(self):
        clusters = cluster_roots([1.0, 1.0 + 1e-12, 3.0], threshold=1e-8)
        assert [c.multiplicity for c in clusters] == [2, 1]

    def test_constant_polynomial_has_no_roots(self):
        assert solve_rational([Fraction(5)]) == []


class TestSector:
    """Spectra of h on P_n and h_G2 on Q_n."""

    def test_ground_state(self):
        report = spectrum("a2", 0)
        assert [(r.value, r.multiplicity) for r in report.roots] == [(0j, 1)]
        assert report.residual_ok

    def test_n2_at_trigonometric_point(self):
        report = spectrum("a2", 2, {"tau": Fraction(1), "mu": Fraction(0)})
        assert _spectrum_set(report.roots) == [(-4.0, 0.0, 3), (0.0, 0.0, 3)]
        assert report.residual_ok

    @pytest.mark.parametrize("tau", [Fraction(1), Fraction(2), Fraction(-3, 2)])
    def test_n2_degenerate_point(self, tau):
        # (E^2 + 4 tau E + 4 mu)^3 collapses to (E + 2 tau)^6
        report = spectrum("a2", 2, {"tau": tau, "mu": tau**2})
        assert _spectrum_set(report.roots) == [(-2 * float(tau), 0.0, 6)]
        assert report.residual_ok
        assert report.roots[0].exact == QuadraticSurd(-2 * tau)

    def test_symbolic_spectrum_has_no_roots(self):
        report = spectrum("a2", 2)
        assert report.roots is None
        assert report.to_dict()["char_poly"]["degree"] == 6

    def test_g2_sector_size(self):
        report = spectrum("g2", 2, {"tau": Fraction(1), "mu": Fraction(0), "lam": Fraction(1, 3)})
        assert report.poly.degree == 4
        assert report.residual_ok

    def test_unknown_model(self):
        with pytest.raises(ConfigError):
            sector_matrix("b3", 1, {})

    def test_nu_is_not_bindable(self):
        with pytest.raises(ConfigError):
            sector_matrix("a2", 1, {"nu": Fraction(1)})

    def test_lambda_rejected_for_a2(self):
        with pytest.raises(ConfigError):
            sector_matrix("a2", 1, {"lam": Fraction(1)})


class TestEigenfunctions:
    def test_full_eigenbasis(self):
        report = eigenfunctions("a2", 2, {"tau": Fraction(1), "mu": Fraction(0)})
        assert len(report.descriptors) == 6
        assert all(d.gauge == {"D_xy": "-1/3"} for d in report.descriptors)
        assert all(d.couplings["kappa"] == "10/9" for d in report.descriptors)

    def test_unbound_couplings_rejected(self):
        with pytest.raises(ConfigError):
            eigenfunctions("a2", 2, {"tau": Fraction(1)})

    def test_g2_descriptor_needs_lambda(self):
        with pytest.raises(ValueError):
            assemble_eigenfunction([Fraction(1)], pn_basis(0), "g2")

    def test_a2_descriptor(self):
        descriptor = assemble_eigenfunction([Fraction(1), Fraction(0), Fraction(2)], pn_basis(1), "a2")
        assert descriptor.to_dict()["gauge"] == {"D_xy": "-1/6"}
        assert descriptor.couplings["nu"] == "-1/3"
