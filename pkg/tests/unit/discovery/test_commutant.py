"""Tests for operator ansätze and commutant searches."""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.core.exceptions import AnsatzTooLargeError, ConfigError
from src.discovery import AnsatzSpec, commutant_solve, commutes, find_km, spec_from_pattern
from src.discovery.ansatz import bind, commutator_system, degree_pattern, operator_from_vector, vector_of
from src.discovery.commutant import a2_ansatz, membership_sweep, random_bindings
from src.models import a2
from src.operators.diffop import Chart, DiffOp

XY, UV = Chart.XY, Chart.UV


@pytest.fixture(scope="module")
def bound_h(generic_bindings):
    return bind(a2.h_xy(), generic_bindings)


class TestAnsatzSpec:
    def test_uniform_counts(self):
        spec = AnsatzSpec.uniform(XY, 1, 2)
        assert spec.unknown_count() == 18
        assert len(spec.unknowns()) == 18

    def test_k_pattern_ansatz(self, generic_bindings):
        spec = a2_ansatz(generic_bindings)
        assert spec.degree_bounds == {3: 7, 2: 6, 1: 5, 0: 4}
        assert spec.unknown_count() == 285

    def test_cap(self):
        with pytest.raises(AnsatzTooLargeError):
            AnsatzSpec.uniform(XY, 3, 6).check_size(cap=10)

    def test_bound_outside_order_range(self):
        with pytest.raises(ValidationError):
            AnsatzSpec(chart=XY, max_order=1, degree_bounds={2: 1})

    def test_bindings_normalised(self):
        spec = AnsatzSpec.uniform(XY, 0, 0, {"tau": "0.5", "mu": Fraction(2, 4)})
        assert spec.rational_bindings() == {"mu": Fraction(1, 2), "tau": Fraction(1, 2)}

    def test_degree_pattern_of_hamiltonian(self, h_xy):
        assert degree_pattern(h_xy) == {2: 4, 1: 3, 0: 2}


class TestAnsatzCoordinates:
    def test_round_trip(self, h_xy, generic_bindings, bound_h):
        spec = spec_from_pattern(h_xy, generic_bindings, margin=0)
        vector = vector_of(spec, bound_h)
        assert vector is not None
        assert operator_from_vector(spec, vector) == bound_h

    def test_operator_outside_ansatz(self, syms):
        spec = AnsatzSpec.uniform(XY, 1, 0)
        assert vector_of(spec, DiffOp.partial(1, 0, XY, syms["x"])) is None

    def test_unbound_parameters_rejected(self, h_xy):
        with pytest.raises(ConfigError):
            bind(h_xy, {"tau": Fraction(1)})

    def test_chart_mismatch(self, bound_h):
        with pytest.raises(ConfigError):
            commutator_system(bound_h, AnsatzSpec.uniform(UV, 1, 1))


class TestCommutant:
    """Exact commutants inside small ansätze."""

    def test_integral_commutes(self, generic_bindings, bound_h):
        assert commutes(bound_h, bind(a2.k_xy(), generic_bindings))

    def test_euler_operator_does_not_commute(self, bound_h, syms):
        assert not commutes(bound_h, DiffOp.partial(1, 0, XY, syms["x"]))

    def test_functions_commuting_with_h_are_constant(self, generic_bindings, bound_h):
        basis = commutant_solve(bound_h, AnsatzSpec.uniform(XY, 0, 2, generic_bindings))
        assert basis.nullspace_dim == 1
        assert sorted(basis.trivial) == ["I"]
        assert basis.nontrivial_dim == 0

    def test_second_order_commutant_is_trivial(self, h_xy, generic_bindings):
        spec = spec_from_pattern(h_xy, generic_bindings, margin=0)
        basis = commutant_solve(h_xy, spec)
        assert basis.trivial_dim == 2
        assert basis.nontrivial_dim == 0
        assert basis.contains(h_xy)
        assert basis.all_verified
        assert basis.to_dict()["nullspace_dim"] == 2

    def test_random_bindings_avoid_degenerate_nu(self):
        for binding in random_bindings(50, seed=11):
            assert binding["nu"] not in (Fraction(-1, 3), Fraction(-2, 3))
            assert all(value != 0 for value in binding.values())

    def test_random_bindings_are_seeded(self):
        assert random_bindings(3, seed=5) == random_bindings(3, seed=5)

    def test_membership_sweep_sends_string_bindings(self, mocker):
        job = mocker.patch("src.discovery.commutant._membership_job", side_effect=lambda b: {"bindings": b})
        rows = membership_sweep(3, seed=5, workers=1)
        assert job.call_count == 3
        assert rows[0]["bindings"] == {k: str(v) for k, v in random_bindings(3, seed=5)[0].items()}


@pytest.mark.slow
class TestRediscovery:
    """Full-size searches; minutes rather than seconds."""

    def test_k_found_in_third_order_ansatz(self):
        (result,) = membership_sweep(count=1, seed=2024, workers=1)
        assert result["nullspace_dim"] == 3
        assert result["nontrivial_dim"] == 1
        assert result["contains_h"] and result["contains_k"]
        assert result["verified"]

    def test_g2_correction_trivial_at_zero_lambda(self):
        report = find_km(lam=0, nu=Fraction(3, 7), tau=Fraction(2, 3), mu=Fraction(-1, 5))
        assert report.solvable
        assert report.verified

    def test_g2_correction_absent_in_constant_ansatz(self):
        report = find_km(lam=Fraction(1, 2), nu=Fraction(3, 7), tau=Fraction(2, 3), mu=Fraction(-1, 5),
                         degree_bound=0)
        assert not report.solvable
        assert report.residual > 0
        assert report.to_dict()["exploratory"] is True
