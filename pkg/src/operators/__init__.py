"""Bivariate differential operators with factored rational coefficients."""

from src.operators.diffop import Chart, DiffOp, commutator, compose
from src.operators.conjugation import conjugate_by_power, gauge_transform
from src.operators.parity import parity, reflect_y, restrict_to_even

__all__ = [
    "Chart",
    "DiffOp",
    "commutator",
    "compose",
    "conjugate_by_power",
    "gauge_transform",
    "parity",
    "reflect_y",
    "restrict_to_even",
]
