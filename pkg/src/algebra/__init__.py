"""Exact polynomial and rational-function algebra over the fixed variable universe."""

from src.algebra.mpoly import MPoly, Scalar, variables
from src.algebra.ratfn import Base, FactoredRatFn

__all__ = ["MPoly", "Scalar", "variables", "Base", "FactoredRatFn"]
