"""Invariant polynomial spaces, their matrix representations and exact kernels."""

from src.qes.bases import MonomialBasis, pn_basis, qn_basis, space_is_stable
from src.qes.linalg import determinant, kernel, rank
from src.qes.representation import (
    InvarianceResult,
    RepMatrix,
    invariance_check,
    matrix_of,
    particular_integral_check,
)

__all__ = [
    "MonomialBasis",
    "pn_basis",
    "qn_basis",
    "space_is_stable",
    "determinant",
    "kernel",
    "rank",
    "InvarianceResult",
    "RepMatrix",
    "invariance_check",
    "matrix_of",
    "particular_integral_check",
]
