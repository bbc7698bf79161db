"""Tests for lattice series, the elliptic context and numeric cross-checks."""

import math

import pytest

from src.core.config import LatticeConfig
from src.core.exceptions import ConfigError, PoleProximityError
from src.elliptic import EllipticContext, Lattice, numeric_check, run_checks, wp, wp_prime
from src.elliptic.coordinates import EllipticPoint, is_admissible, stencil_margin
from src.elliptic.weierstrass import duplicate, wp_pair


class TestLattice:
    def test_collinear_periods_rejected(self):
        with pytest.raises(ValueError):
            Lattice(1.0, 2.0)

    def test_pole_exclusion(self, rectangular_ctx):
        with pytest.raises(PoleProximityError):
            rectangular_ctx.lattice.check_pole(2.0 + 0.01)

    def test_reduce_moves_into_cell(self, rectangular_ctx):
        lattice = rectangular_ctx.lattice
        assert lattice.reduce(0.3 + 4.0) == pytest.approx(0.3)

    def test_stencil_margin_widens_exclusion(self, rectangular_ctx):
        # y1 - y2 sits just outside the exclusion disk around 0
        radius = rectangular_ctx.lattice.exclusion_radius
        y1 = 0.3 + 0.2j
        pt = EllipticPoint(y1, y1 - 1.01 * radius)
        assert is_admissible(pt, rectangular_ctx)
        assert not is_admissible(pt, rectangular_ctx, stencil_margin(rectangular_ctx, second_order=True))
        assert stencil_margin(rectangular_ctx, second_order=True) > stencil_margin(rectangular_ctx)


class TestWeierstrass:
    """Values of the Weierstrass function on a rectangular lattice."""

    def test_even(self, rectangular_ctx):
        z = 0.31 + 0.17j
        assert wp(-z, rectangular_ctx.lattice) == pytest.approx(wp(z, rectangular_ctx.lattice), rel=1e-12)

    def test_periodic(self, rectangular_ctx):
        z = 0.31 + 0.17j
        lattice = rectangular_ctx.lattice
        assert wp(z + 2.0, lattice) == pytest.approx(wp(z, lattice), rel=1e-10)
        assert wp(z + 2.6j, lattice) == pytest.approx(wp(z, lattice), rel=1e-10)

    def test_differential_equation(self, rectangular_ctx):
        lattice = rectangular_ctx.lattice
        p, dp = wp_pair(0.4 + 0.2j, lattice)
        assert dp * dp == pytest.approx(4 * p**3 - lattice.g2 * p - lattice.g3, rel=1e-10)

    def test_laurent_expansion(self, rectangular_ctx):
        lattice = rectangular_ctx.lattice
        z = 0.15
        laurent = 1 / z**2 + lattice.g2 * z**2 / 20 + lattice.g3 * z**4 / 28
        assert wp(z, lattice) == pytest.approx(laurent, rel=1e-6)

    def test_duplication(self, rectangular_ctx):
        lattice = rectangular_ctx.lattice
        z = 0.21 + 0.11j
        p2, _ = duplicate(wp(z, lattice), wp_prime(z, lattice), lattice.g2)
        assert p2 == pytest.approx(wp(2 * z, lattice), rel=1e-9)


class TestEllipticContext:
    def test_invariants_match_couplings(self, rectangular_ctx):
        residuals = rectangular_ctx.invariant_residuals()
        assert all(value < 1e-9 for value in residuals.values())

    def test_rectangular_couplings_are_real(self, rectangular_ctx):
        assert abs(rectangular_ctx.tau.imag) < 1e-9
        assert abs(rectangular_ctx.mu.imag) < 1e-9

    def test_stretched_lattice_stays_finite(self, stretched_ctx):
        assert math.isfinite(abs(stretched_ctx.tau))
        assert math.isfinite(abs(stretched_ctx.g2))
        assert math.isfinite(abs(wp(0.3, stretched_ctx.lattice)))

    def test_bad_config_is_config_error(self):
        config = LatticeConfig(omega1=(1.0, 0.0), omega2=(2.0, 0.0))
        with pytest.raises(ConfigError):
            EllipticContext.from_config(config)


class TestNumericChecks:
    """Seeded cross-checks on a rectangular lattice."""

    @pytest.mark.parametrize("check", ["wp_ode", "wp_duplication", "map_parity"])
    def test_passes(self, rectangular_ctx, check):
        report = numeric_check(check, rectangular_ctx, samples=10, seed=1)
        assert report.passed
        assert 0 < report.samples <= 10
        assert report.failures == []

    def test_seeded_reports_are_reproducible(self, rectangular_ctx):
        first = numeric_check("wp_ode", rectangular_ctx, samples=5, seed=3)
        second = numeric_check("wp_ode", rectangular_ctx, samples=5, seed=3)
        assert first.max_error == second.max_error

    def test_unknown_check(self, rectangular_ctx):
        with pytest.raises(ConfigError):
            numeric_check("wp_everything", rectangular_ctx)

    def test_exploratory_check_never_fails(self, rectangular_ctx):
        report = numeric_check("matushko_n2", rectangular_ctx, samples=5, seed=1)
        assert report.exploratory
        assert report.passed
        assert report.to_dict()["tolerance"] is None

    def test_eigenfunction_residual_on_default_seed(self, rectangular_ctx):
        # the default seed used to draw a point whose Laplacian stencil hit a pole
        report = numeric_check("eigenfunction_residual", rectangular_ctx, samples=20, seed=20240601)
        assert report.samples > 0
        assert report.details["states"] == 6

    def test_run_checks_in_canonical_order(self, lattice_file):
        reports = run_checks(LatticeConfig.from_file(lattice_file))
        assert [r.check for r in reports] == ["wp_ode", "map_parity", "potential_match"]
        assert all(r.samples == 5 for r in reports[:2])
