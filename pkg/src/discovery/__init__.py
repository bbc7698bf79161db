"""Commutant searches: exact nullspaces of commutator systems inside operator ansätze."""

from src.discovery.ansatz import AnsatzSpec, degree_pattern, spec_from_pattern
from src.discovery.commutant import (
    CommutantBasis,
    KmReport,
    commutant_solve,
    commutes,
    find_km,
    membership_sweep,
)
from src.discovery.modular import ModularSolution, solve_modular

__all__ = [
    "AnsatzSpec",
    "CommutantBasis",
    "KmReport",
    "ModularSolution",
    "commutant_solve",
    "commutes",
    "degree_pattern",
    "find_km",
    "membership_sweep",
    "solve_modular",
    "spec_from_pattern",
]
