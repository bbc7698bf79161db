"""Tests for rational functions over declared denominator bases."""

from fractions import Fraction

import pytest

from src.algebra import upoly
from src.algebra.ratfn import Base, FactoredRatFn
from src.core.exceptions import NotPolynomialError
from src.models.a2 import D, D_XY, Y_BASE


class TestFactoredRatFn:
    """Arithmetic, reduction and differentiation."""

    def test_undeclared_base_rejected(self, syms):
        with pytest.raises(ValueError):
            Base("W", syms["x"])

    def test_reduce_cancels_base(self, syms):
        f = FactoredRatFn.over(D * syms["x"], D_XY)
        assert f.reduce().as_poly() == syms["x"]

    def test_not_polynomial(self, syms):
        f = FactoredRatFn.over(syms["x"], Y_BASE)
        assert not f.is_polynomial()
        with pytest.raises(NotPolynomialError):
            f.as_poly()

    def test_sum_over_common_base(self, syms):
        x, y = syms["x"], syms["y"]
        f = FactoredRatFn.over(x, Y_BASE) + FactoredRatFn.over(y, Y_BASE)
        assert f == FactoredRatFn.over(x + y, Y_BASE)

    def test_equality_by_cross_multiplication(self, syms):
        y = syms["y"]
        assert FactoredRatFn.over(y * y, Y_BASE, 2) == FactoredRatFn.of(1)

    def test_quotient_rule(self, syms):
        y = syms["y"]
        # d/dy (1/y) = -1/y^2
        assert FactoredRatFn.over(1, Y_BASE).diff("y") == FactoredRatFn.over(-1, Y_BASE, 2)

    def test_subs_keeps_denominator(self, syms):
        f = FactoredRatFn.over(syms["tau"] * syms["x"], Y_BASE)
        assert f.subs({"tau": 2}) == FactoredRatFn.over(2 * syms["x"], Y_BASE)


class TestUPoly:
    """Dense univariate polynomials used by the spectral solver."""

    def test_squarefree_decomposition(self):
        # (E - 1)^2 (E + 2)
        p = upoly.mul(upoly.mul([1, -1], [1, -1]), [1, 2])
        parts = upoly.squarefree_decomposition(p)
        rebuilt = upoly.product([upoly.product([f] * m) for f, m in parts])
        assert rebuilt == upoly.monic(p)
        assert sorted(m for _, m in parts) == [1, 2]

    def test_divmod(self):
        quot, rem = upoly.divmod_([1, 0, -1], [1, -1])
        assert quot == [Fraction(1), Fraction(1)]
        assert rem == []

    def test_gcd_is_monic(self):
        g = upoly.gcd(upoly.mul([2, -2], [1, 3]), upoly.mul([1, -1], [1, 5]))
        assert g == [Fraction(1), Fraction(-1)]

    def test_evaluate(self):
        assert upoly.evaluate([1, 0, -4], 2) == 0
