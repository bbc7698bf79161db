"""Spectra and eigenfunctions of the algebraic sector of a model at given couplings."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional

from structlog import get_logger

from src.core.exceptions import ConfigError
from src.models import a2, g2
from src.qes.bases import pn_basis, qn_basis
from src.qes.representation import RepMatrix, matrix_of
from src.spectral.charpoly import CharPoly, char_poly, factor_multiplicity, sextic, sextic_factors
from src.spectral.eigen import EigenfunctionDescriptor, assemble_eigenfunction, eigenpairs
from src.spectral.roots import Root, residual_ok, solve_rational
from src.validation.report import Status, VerificationReport

logger = get_logger()

MODELS = ("a2", "g2")


def sector_matrix(model: str, n: int, bindings: Mapping[str, Fraction]) -> RepMatrix:
    """Matrix of ``h`` on ``P_n`` (A2) or of ``h_G2`` on ``Q_n`` (G2) at ``nu = -n/3``."""
    model = model.lower()
    if model not in MODELS:
        raise ConfigError(f"unknown model {model!r}; expected one of {MODELS}")
    if "nu" in bindings:
        raise ConfigError("nu is fixed to -n/3 on the algebraic sector")
    if model == "a2":
        if "lam" in bindings:
            raise ConfigError("lam only applies to the G2 model")
        return matrix_of(a2.h_xy(), pn_basis(n), dict(bindings))
    return matrix_of(g2.h_g2(), qn_basis(n), dict(bindings))


@dataclass
class SpectrumReport:
    """Characteristic polynomial of the sector and, when numeric, its roots."""

    model: str
    n: int
    bindings: Dict[str, Fraction]
    poly: CharPoly
    roots: Optional[List[Root]] = None
    residual_ok: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model,
            "n": self.n,
            "bindings": {k: str(v) for k, v in sorted(self.bindings.items())},
            "char_poly": self.poly.to_dict(),
            "roots": [r.to_dict() for r in self.roots] if self.roots is not None else None,
            "residual_ok": self.residual_ok,
        }


def spectrum(model: str, n: int, bindings: Optional[Mapping[str, Fraction]] = None) -> SpectrumReport:
    bindings = dict(bindings or {})
    matrix = sector_matrix(model, n, bindings)
    poly = char_poly(matrix)
    report = SpectrumReport(model.lower(), n, bindings, poly)
    if poly.is_numeric():
        coefficients = poly.rational_coefficients()
        report.roots = solve_rational(coefficients)
        values = [r.value for r in report.roots for _ in range(r.multiplicity)]
        report.residual_ok = residual_ok(coefficients, values)
    logger.info("spectrum computed", model=model, n=n, degree=poly.degree,
                numeric=poly.is_numeric(), distinct=len(report.roots or []))
    return report


@dataclass
class EigenfunctionReport:
    model: str
    n: int
    bindings: Dict[str, Fraction]
    descriptors: List[EigenfunctionDescriptor] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model,
            "n": self.n,
            "bindings": {k: str(v) for k, v in sorted(self.bindings.items())},
            "eigenfunctions": [d.to_dict() for d in self.descriptors],
        }


def eigenfunctions(model: str, n: int, bindings: Optional[Mapping[str, Fraction]] = None) -> EigenfunctionReport:
    """Every eigenfunction of the sector, with its gauge factor, at fully bound couplings."""
    bindings = dict(bindings or {})
    matrix = sector_matrix(model, n, bindings)
    if not matrix.is_numeric():
        missing = sorted({"tau", "mu"} - set(bindings)) or ["lam"]
        raise ConfigError(f"eigenfunctions need numeric couplings; bind {', '.join(missing)}")
    report = EigenfunctionReport(model.lower(), n, bindings)
    for pair in eigenpairs(matrix):
        report.descriptors.append(
            assemble_eigenfunction(pair.vector, matrix.basis, model, lam=bindings.get("lam"), energy=pair.root)
        )
    logger.info("eigenfunctions assembled", model=model, n=n, count=len(report.descriptors))
    return report


def reference_sextic_check() -> VerificationReport:
    """Compare the symbolic n = 2 characteristic polynomial of h with the reference sextic.

    A match is ExactPass. Otherwise the report lists how often each reference
    quadratic divides the computed polynomial.
    """
    computed = char_poly(sector_matrix("a2", 2, {}))
    if computed == sextic():
        return VerificationReport(identity="sextic_n2", status=Status.EXACT_PASS)
    factors = sextic_factors()
    multiplicities = {
        f"E^2 + ({f[1].to_string()})*E + ({f[2].to_string()})": factor_multiplicity(computed, f) for f in factors
    }
    accounted = sum(2 * m for m in multiplicities.values())
    details = {
        "computed": computed.to_strings(),
        "reference": sextic().to_strings(),
        "factor_multiplicities": multiplicities,
        "fully_factored": accounted == computed.degree,
    }
    notes = [f"det(E - h|P_2) != reference sextic; reference factor multiplicities {multiplicities}"]
    logger.info("reference sextic compared", multiplicities=multiplicities)
    return VerificationReport(identity="sextic_n2", status=Status.PASS_WITH_DISCREPANCIES,
                              notes=notes, details=details)
