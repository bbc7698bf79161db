"""Tests for the model catalog and the hidden-algebra generators."""

from fractions import Fraction

import pytest

from src.core.exceptions import ConfigError, UnknownGeneratorError, UnknownModelError
from src.models import ModelId, ModelTag, build, limit_operator
from src.models import a2, g2
from src.operators.diffop import Chart, DiffOp, commutator


class TestCatalog:
    """Constructors keyed by model tag."""

    def test_build_by_string(self, k_xy):
        assert build("K_A2_XY") == k_xy

    def test_build_by_tag(self, h_xy):
        assert build(ModelTag.H_ALG_XY) == h_xy

    def test_parse_indexed_tags(self):
        assert ModelId.parse("Sl3Gen(7)") == ModelId(ModelTag.SL3_GEN, 7)
        assert ModelId.parse("G2Gen(T1)") == ModelId(ModelTag.G2_GEN, "T1")

    def test_unknown_tag(self):
        with pytest.raises(UnknownModelError):
            build("Bogus")

    def test_sl3_index_out_of_range(self):
        with pytest.raises(UnknownModelError):
            build("Sl3Gen(9)")

    def test_particular_integral_needs_n(self):
        with pytest.raises(UnknownModelError):
            build(ModelTag.IPAR_XY)

    def test_particular_integral_order(self):
        assert build(ModelTag.IPAR_XY, n=2).order == 3

    def test_g2_hamiltonian_chart(self):
        assert build("H_G2_UV").chart is Chart.UV


class TestGenerators:
    """First-order generators of sl(3) and g(2)."""

    def test_sl3_has_eight_first_order_generators(self):
        gens = a2.sl3_generators()
        assert len(gens) == 8
        assert all(op.order == 1 for op in gens.values())

    def test_translations_commute(self):
        assert commutator(a2.sl3_generator(1), a2.sl3_generator(2)).is_zero()

    def test_sl3_closes(self):
        # [J1, J3] = [d_x, x d_x] = d_x
        assert commutator(a2.sl3_generator(1), a2.sl3_generator(3)) == a2.sl3_generator(1)

    def test_g2_generator_names(self):
        assert len(g2.G2_GENERATORS) == 11
        gens = g2.g2_generators(2)
        assert all(op.chart is Chart.UV for op in gens.values())

    def test_unknown_g2_generator(self):
        with pytest.raises(UnknownGeneratorError):
            g2.g2_generator("Z9", 1)


class TestLimits:
    """Degenerations of the elliptic operator."""

    def test_rational_limit_drops_both_parameters(self, h_xy):
        assert h_xy.variables() >= {"tau", "mu"}
        assert not limit_operator(h_xy, "rational").variables() & {"tau", "mu"}

    def test_trigonometric_limit_keeps_tau(self, h_xy):
        trig = limit_operator(h_xy, "trigonometric")
        assert "mu" not in trig.variables()
        assert "tau" in trig.variables()

    def test_unknown_limit(self, h_xy):
        with pytest.raises(ConfigError):
            limit_operator(h_xy, "hyperbolic")


class TestCouplings:
    def test_a2_coupling(self):
        assert a2.coupling_a2(3) == 2
        assert a2.nu_for(3) == -1

    def test_g2_couplings_at_zero_lambda(self):
        kappa, kappa2 = g2.g2_couplings(Fraction(1, 2), 0)
        assert kappa == Fraction(-1, 4)
        assert kappa2.is_zero()

    def test_g2_hamiltonian_reduces_to_a2_at_zero_lambda(self):
        assert g2.h_g2().subs({"lam": 0}) == a2.h_uv()

    def test_g2_correction_is_first_order(self):
        assert g2.h_m().order == 1
        assert isinstance(g2.h_m(), DiffOp)
