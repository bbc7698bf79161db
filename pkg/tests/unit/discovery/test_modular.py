"""Tests for modular elimination and rational reconstruction."""

from fractions import Fraction

import numpy as np
import pytest

from src.core.exceptions import NonConvergenceError
from src.discovery.modular import (
    integer_rows,
    is_prime,
    rational_reconstruct,
    rref_mod,
    solve_modular,
    word_primes,
)

P = 2147483647


class TestPrimes:
    @pytest.mark.parametrize("n", [2, 3, 5, 13, 7919, P])
    def test_primes(self, n):
        assert is_prime(n)

    @pytest.mark.parametrize("n", [0, 1, 4, 9, 561, P - 2])
    def test_composites(self, n):
        assert not is_prime(n)

    def test_word_primes_descend(self):
        primes = word_primes()
        first, second = next(primes), next(primes)
        assert first == P
        assert second < first and is_prime(second)


class TestReconstruction:
    @pytest.mark.parametrize("value", [Fraction(-3, 7), Fraction(22, 9), Fraction(0), Fraction(5)])
    def test_round_trip(self, value):
        residue = value.numerator * pow(value.denominator, -1, P) % P
        assert rational_reconstruct(residue, P) == value

    def test_integer_rows_clear_denominators(self):
        assert integer_rows([{0: Fraction(1, 2), 3: Fraction(1, 3)}]) == [{0: 3, 3: 2}]


class TestRrefMod:
    def test_rank_and_pivots(self):
        a = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
        reduced, pivots = rref_mod(a, 101)
        assert pivots == [0, 1]
        assert reduced.shape == (2, 3)


class TestSolveModular:
    """Exact answers from modular images."""

    def test_nullspace(self):
        solution = solve_modular([{0: Fraction(1), 1: Fraction(-2)}], 2)
        assert solution.rank == 1
        assert solution.free == [1]
        assert solution.basis == [[2, 1]]

    def test_particular_solution(self):
        rows = [{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(1), 1: Fraction(-1)}]
        solution = solve_modular(rows, 2, [Fraction(3), Fraction(1)])
        assert solution.consistent
        assert solution.particular == [2, 1]
        assert solution.basis == []

    def test_rational_solution(self):
        solution = solve_modular([{0: Fraction(1, 2)}], 1, [Fraction(1, 3)])
        assert solution.particular == [Fraction(2, 3)]

    def test_inconsistent(self):
        rows = [{0: Fraction(1)}, {0: Fraction(1)}]
        solution = solve_modular(rows, 1, [Fraction(1), Fraction(2)])
        assert not solution.consistent
        assert solution.primes_used == 2

    def test_large_rational_needs_several_primes(self):
        big = Fraction(10**15 + 37, 3)
        solution = solve_modular([{0: Fraction(1)}], 1, [big])
        assert solution.particular == [big]
        assert solution.primes_used >= 2

    def test_gives_up_after_prime_cap(self, monkeypatch):
        monkeypatch.setenv("QES_DISCOVERY_MAX_PRIMES", "2")
        huge = Fraction(10**40 + 1, 7)
        with pytest.raises(NonConvergenceError):
            solve_modular([{0: Fraction(1)}], 1, [huge])
