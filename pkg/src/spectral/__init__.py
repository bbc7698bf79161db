"""Characteristic polynomials, roots and eigenfunctions of the QES sector."""

from src.spectral.charpoly import CharPoly, cayley_hamilton_holds, char_poly, factor_multiplicity, sextic, sextic_factors
from src.spectral.eigen import EigenfunctionDescriptor, Eigenpair, assemble_eigenfunction, eigenpairs
from src.spectral.roots import QuadraticSurd, Root, numeric_roots, solve_rational
from src.spectral.sector import (
    EigenfunctionReport,
    SpectrumReport,
    eigenfunctions,
    reference_sextic_check,
    sector_matrix,
    spectrum,
)

__all__ = [
    "CharPoly",
    "cayley_hamilton_holds",
    "char_poly",
    "factor_multiplicity",
    "sextic",
    "sextic_factors",
    "EigenfunctionDescriptor",
    "EigenfunctionReport",
    "Eigenpair",
    "assemble_eigenfunction",
    "eigenfunctions",
    "eigenpairs",
    "QuadraticSurd",
    "Root",
    "SpectrumReport",
    "numeric_roots",
    "reference_sextic_check",
    "sector_matrix",
    "solve_rational",
    "spectrum",
]
