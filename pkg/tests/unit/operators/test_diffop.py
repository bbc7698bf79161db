"""Tests for differential operators in normal form."""

from fractions import Fraction

import pytest

from src.core.exceptions import ChartMismatchError, ParityViolationError
from src.models import a2
from src.operators.diffop import Chart, DiffOp, commutator, compose
from src.operators.parity import parity, reflect_y, restrict_to_even

XY, UV = Chart.XY, Chart.UV


class TestDiffOp:
    """Construction, composition and action."""

    def test_chart_variables_enforced(self, syms):
        with pytest.raises(ChartMismatchError):
            DiffOp(UV, {(1, 0): syms["x"]})

    def test_parameters_allowed(self, syms):
        op = DiffOp(XY, {(1, 0): syms["tau"] * syms["x"]})
        assert op.order == 1

    def test_heisenberg_relation(self, syms):
        dx = DiffOp.partial(1, 0, XY)
        x = DiffOp.scalar(syms["x"], XY)
        assert commutator(dx, x) == DiffOp.identity(XY)

    def test_leibniz_second_order(self, syms):
        x = syms["x"]
        dx2 = DiffOp.partial(2, 0, XY)
        # d^2 o x^2 = x^2 d^2 + 4x d + 2
        expected = DiffOp(XY, {(2, 0): x**2, (1, 0): 4 * x, (0, 0): 2})
        assert compose(dx2, DiffOp.scalar(x**2, XY)) == expected

    def test_compose_is_associative(self, h_xy, syms):
        a = DiffOp.partial(0, 1, XY, syms["x"])
        b = DiffOp.partial(1, 0, XY, syms["y"] ** 2)
        assert compose(compose(a, b), h_xy) == compose(a, compose(b, h_xy))

    def test_apply_matches_composition(self, h_xy, syms):
        p = syms["x"] ** 2 * syms["y"] + syms["y"]
        m = DiffOp.partial(1, 1, XY)
        assert compose(h_xy, m).apply(p) == h_xy.apply(m.apply(p))

    def test_chart_mismatch_in_compose(self):
        with pytest.raises(ChartMismatchError):
            compose(DiffOp.identity(XY), DiffOp.identity(UV))

    def test_subs_rejects_chart_variables(self, h_xy):
        with pytest.raises(ValueError):
            h_xy.subs({"x": 1})

    def test_triples_are_sorted_by_order(self, k_xy):
        orders = [a + b for a, b, _ in k_xy.to_triples()]
        assert orders == sorted(orders, reverse=True)
        assert orders[0] == 3

    def test_polynomial_terms(self, h_xy):
        assert set(h_xy.polynomial_terms()) == set(h_xy.terms)


class TestWeights:
    """Every model operator is homogeneous under y_i -> t y_i."""

    def test_hamiltonian_weight(self, h_xy):
        assert h_xy.weight_profile() == {-2}

    def test_integral_weight(self, k_xy):
        assert k_xy.weight_profile() == {-3}

    def test_laplace_beltrami_weight(self):
        assert a2.laplace_beltrami().weight_profile() == {-2}


class TestParity:
    """Reflection y -> -y and restriction to even functions."""

    def test_hamiltonian_is_even(self, h_xy):
        assert parity(h_xy) == "even"

    def test_integral_is_odd(self, k_xy):
        assert parity(k_xy) == "odd"

    def test_reflection_is_involution(self, k_xy):
        assert reflect_y(reflect_y(k_xy)) == k_xy

    def test_second_derivative_on_even_functions(self, syms):
        # d_y^2 f(y^2) = 2 f' + 4 v f''
        got = restrict_to_even(DiffOp.partial(0, 2, XY))
        assert got == DiffOp(UV, {(0, 1): 2, (0, 2): 4 * syms["v"]})

    def test_odd_coefficient_rejected(self, syms):
        with pytest.raises(ParityViolationError):
            restrict_to_even(DiffOp.partial(1, 0, XY, syms["y"]))

    def test_restriction_of_hamiltonian(self, h_xy):
        assert restrict_to_even(h_xy, a2.UV_BASE_MAP) == a2.h_uv()

    def test_restriction_respects_products(self, h_xy, syms):
        a = DiffOp.partial(2, 0, XY, syms["x"])
        lhs = restrict_to_even(compose(h_xy, a))
        rhs = compose(restrict_to_even(h_xy), restrict_to_even(a))
        assert lhs == rhs

    def test_restriction_scales(self, h_xy):
        assert restrict_to_even(h_xy.times(Fraction(2, 3))) == restrict_to_even(h_xy).times(Fraction(2, 3))
