"""Finite-dimensional representations of the QES operators on P_n and Q_n."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Union

from structlog import get_logger

from src.algebra.mpoly import MPoly, Scalar
from src.core.exceptions import InvarianceError
from src.models import a2, g2
from src.operators.diffop import Chart, DiffOp, commutator
from src.qes.bases import MonomialBasis, pn_basis, qn_basis
from src.qes.linalg import Matrix, is_zero_matrix, mat_mul, mat_sub
from src.validation.report import Status, VerificationReport

logger = get_logger()

Bindings = Mapping[str, Union[MPoly, Scalar]]


@dataclass
class Leakage:
    """Image of one basis monomial that leaves the span."""

    column: str
    outside: List[str]


@dataclass
class InvarianceResult:
    invariant: bool
    leakage: List[Leakage] = field(default_factory=list)

    def describe(self) -> List[str]:
        return [f"{item.column} -> {', '.join(item.outside)}" for item in self.leakage]


@dataclass
class RepMatrix:
    """``entries[i][j]`` is the i-th coordinate of ``Op(basis_j)``."""

    basis: MonomialBasis
    entries: Matrix
    bindings: Dict[str, str] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.entries)

    def is_numeric(self) -> bool:
        return all(c.is_constant() for row in self.entries for c in row)

    def specialize(self, bindings: Bindings) -> "RepMatrix":
        entries = [[c.subs(bindings) for c in row] for row in self.entries]
        merged = dict(self.bindings)
        merged.update({k: MPoly.lift(v).to_string() for k, v in bindings.items()})
        return RepMatrix(self.basis, entries, merged)

    def to_fractions(self) -> List[List[Fraction]]:
        if not self.is_numeric():
            raise ValueError("matrix still depends on parameters")
        return [[Fraction(c.constant_term()) for c in row] for row in self.entries]

    def commutes_with(self, other: "RepMatrix") -> bool:
        return is_zero_matrix(mat_sub(mat_mul(self.entries, other.entries), mat_mul(other.entries, self.entries)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "basis": self.basis.labels(),
            "bindings": dict(sorted(self.bindings.items())),
            "entries": [[c.to_string() for c in row] for row in self.entries],
        }


def _default_bindings(basis: MonomialBasis, bindings: Optional[Bindings]) -> Dict[str, Any]:
    out: Dict[str, Any] = {"nu": Fraction(-basis.n, 3)}
    out.update(bindings or {})
    return out


def _images(op: DiffOp, basis: MonomialBasis, bindings: Bindings) -> List[MPoly]:
    if op.chart is not basis.chart:
        raise InvarianceError(f"operator chart {op.chart.value} does not match basis chart {basis.chart.value}")
    bound = op.subs(bindings)
    bound.polynomial_terms()
    return [bound.apply(m).as_poly() for m in basis.monomials()]


def invariance_check(op: DiffOp, basis: MonomialBasis,
                     bindings: Optional[Bindings] = None) -> InvarianceResult:
    """Apply ``op`` to every basis monomial at ``nu = -n/3`` unless ``nu`` is bound explicitly."""
    bindings = _default_bindings(basis, bindings)
    leakage = []
    labels = basis.labels()
    for j, image in enumerate(_images(op, basis, bindings)):
        _, outside = basis.split(image)
        if outside:
            leakage.append(Leakage(labels[j], outside))
    logger.debug("invariance checked", kind=basis.kind, n=basis.n, leaking=len(leakage))
    return InvarianceResult(not leakage, leakage)


def matrix_of(op: DiffOp, basis: MonomialBasis, bindings: Optional[Bindings] = None) -> RepMatrix:
    """Exact matrix of ``op`` on the basis; raises InvarianceError when the span is not preserved."""
    bindings = _default_bindings(basis, bindings)
    size = len(basis)
    entries = [[MPoly.zero()] * size for _ in range(size)]
    labels = basis.labels()
    leakage = []
    for j, image in enumerate(_images(op, basis, bindings)):
        coords, outside = basis.split(image)
        if outside:
            leakage.append(f"{labels[j]} -> {', '.join(outside)}")
            continue
        for i, c in coords.items():
            entries[i][j] = c
    if leakage:
        raise InvarianceError(f"operator leaves the {basis.kind}_{basis.n} span", leakage)
    shown = {k: MPoly.lift(v).to_string() for k, v in bindings.items()}
    logger.debug("matrix assembled", kind=basis.kind, n=basis.n, size=size)
    return RepMatrix(basis, entries, shown)


def particular_integral_check(n: int, chart: Chart = Chart.XY) -> VerificationReport:
    """``[h, i_par(n)]`` annihilates P_n (chart XY) or ``[h_G2, i_par(n)]`` annihilates Q_n (chart UV)."""
    chart = Chart(chart)
    if chart is Chart.XY:
        h, ipar, basis = a2.h_xy(), a2.ipar_xy(n), pn_basis(n)
    else:
        h, ipar, basis = g2.h_g2(), g2.ipar_uv(n), qn_basis(n)
    c = commutator(h.subs({"nu": Fraction(-n, 3)}), ipar)
    labels = basis.labels()
    nonzero = []
    for j, m in enumerate(basis.monomials()):
        image = c.apply(m)
        if not image.is_zero():
            nonzero.append(f"{labels[j]} -> {image.to_string()}")
    identity = f"particular_integral_{chart.value.lower()}_{n}"
    logger.info("particular integral checked", chart=chart.value, n=n, failing=len(nonzero))
    if nonzero:
        return VerificationReport(identity=identity, status=Status.EXACT_FAIL, notes=nonzero,
                                  details={"n": n, "dimension": len(basis)})
    return VerificationReport(identity=identity, status=Status.EXACT_PASS,
                              details={"n": n, "dimension": len(basis)})
