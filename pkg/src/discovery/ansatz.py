"""Polynomial-coefficient operator ansätze and the linear systems they induce."""

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator
from structlog import get_logger

from src.algebra import monomials as mono
from src.algebra.mpoly import MPoly
from src.core.config import get_settings, parse_rational
from src.core.exceptions import AnsatzTooLargeError, ConfigError
from src.discovery.modular import SparseRow
from src.operators.diffop import Chart, DiffOp, Index, commutator

logger = get_logger()

Unknown = Tuple[Index, Tuple[int, int]]
EquationKey = Tuple[Index, int]


class AnsatzSpec(BaseModel):
    """Operators ``sum c_ab(chart vars) d^a d^b`` with ``a + b <= max_order``.

    ``degree_bounds`` maps a differential order to the largest total degree
    of its coefficients; orders missing from the map carry no unknowns.
    """

    chart: Chart
    max_order: int = Field(..., ge=0)
    degree_bounds: Dict[int, int]
    bindings: Dict[str, str] = Field(default_factory=dict)

    @field_validator("bindings")
    @classmethod
    def check_bindings(cls, value: Dict[str, str]) -> Dict[str, str]:
        out = {}
        for name, raw in value.items():
            if name not in ("tau", "mu", "nu", "lam"):
                raise ValueError(f"unknown parameter {name}")
            try:
                out[name] = str(Fraction(str(raw)))
            except (ValueError, ZeroDivisionError) as e:
                raise ValueError(f"{name}={raw!r} is not rational") from e
        return out

    @model_validator(mode="after")
    def check_bounds(self) -> "AnsatzSpec":
        for order, degree in self.degree_bounds.items():
            if not 0 <= order <= self.max_order:
                raise ValueError(f"degree bound given for order {order} outside 0..{self.max_order}")
            if degree < 0:
                raise ValueError(f"negative degree bound for order {order}")
        return self

    @classmethod
    def uniform(cls, chart: Chart, max_order: int, degree: int,
                bindings: Optional[Mapping[str, object]] = None) -> "AnsatzSpec":
        return cls(
            chart=chart,
            max_order=max_order,
            degree_bounds={k: degree for k in range(max_order + 1)},
            bindings=_binding_strings(bindings),
        )

    def rational_bindings(self) -> Dict[str, Fraction]:
        return {name: Fraction(raw) for name, raw in sorted(self.bindings.items())}

    def indices(self) -> List[Index]:
        return [
            (a, order - a)
            for order in sorted(self.degree_bounds, reverse=True)
            for a in range(order, -1, -1)
        ]

    def unknowns(self) -> List[Unknown]:
        out = []
        for a, b in self.indices():
            degree = self.degree_bounds[a + b]
            out.extend(((a, b), (p, d - p)) for d in range(degree + 1) for p in range(d, -1, -1))
        return out

    def unknown_count(self) -> int:
        return sum(
            (order + 1) * (degree + 1) * (degree + 2) // 2 for order, degree in self.degree_bounds.items()
        )

    def check_size(self, cap: Optional[int] = None) -> int:
        cap = get_settings().discovery_unknown_cap if cap is None else cap
        count = self.unknown_count()
        if count > cap:
            raise AnsatzTooLargeError(count, cap)
        return count

    def to_dict(self) -> Dict[str, object]:
        return {
            "chart": self.chart.value,
            "max_order": self.max_order,
            "degree_bounds": {str(k): v for k, v in sorted(self.degree_bounds.items())},
            "bindings": dict(sorted(self.bindings.items())),
            "unknowns": self.unknown_count(),
        }


def _binding_strings(bindings: Optional[Mapping[str, object]]) -> Dict[str, str]:
    return {name: str(parse_rational(value)) for name, value in (bindings or {}).items()}


def degree_pattern(op: DiffOp) -> Dict[int, int]:
    """Largest total degree, in the chart variables, of the coefficients of each order."""
    names = op.chart.vars
    pattern: Dict[int, int] = {}
    for (a, b), coeff in op.polynomial_terms().items():
        pattern[a + b] = max(pattern.get(a + b, 0), coeff.degree_in(names))
    return pattern


def spec_from_pattern(op: DiffOp, bindings: Mapping[str, object], margin: int = 1,
                      max_order: Optional[int] = None) -> AnsatzSpec:
    """Ansatz whose degree bounds are those of ``op`` plus ``margin``, optionally order-truncated."""
    pattern = degree_pattern(op)
    top = op.order if max_order is None else max_order
    bounds = {order: degree + margin for order, degree in pattern.items() if order <= top}
    return AnsatzSpec(chart=op.chart, max_order=top, degree_bounds=bounds, bindings=_binding_strings(bindings))


def bind(op: DiffOp, bindings: Mapping[str, Fraction]) -> DiffOp:
    """Substitute parameters; the result may only depend on the chart variables."""
    bound = op.subs(dict(bindings)).reduce()
    stray = bound.variables() - set(op.chart.vars)
    if stray:
        raise ConfigError(f"unbound parameters {sorted(stray)} in discovery operator")
    return bound


def _monomial(chart: Chart, p: int, q: int) -> MPoly:
    vx, vy = chart.vars
    return MPoly.monomial({vx: p, vy: q})


def operator_from_vector(spec: AnsatzSpec, vector: Sequence[Fraction]) -> DiffOp:
    terms: Dict[Index, MPoly] = {}
    for ((a, b), (p, q)), c in zip(spec.unknowns(), vector):
        if c:
            terms[(a, b)] = terms.get((a, b), MPoly.zero()) + _monomial(spec.chart, p, q).scale(c)
    return DiffOp(spec.chart, terms)


def vector_of(spec: AnsatzSpec, op: DiffOp) -> Optional[List[Fraction]]:
    """Coordinates of ``op`` in the ansatz, or None when it does not fit."""
    vx, vy = spec.chart.vars
    position = {u: j for j, u in enumerate(spec.unknowns())}
    vector = [Fraction(0)] * len(position)
    for index, coeff in op.polynomial_terms().items():
        for key, c in coeff.items():
            p, q = mono.exponent(key, vx), mono.exponent(key, vy)
            j = position.get((index, (p, q)))
            if j is None:
                return None
            vector[j] = Fraction(c)
    return vector


def _equations(op: DiffOp) -> Dict[EquationKey, Fraction]:
    return {
        (index, key): Fraction(c)
        for index, coeff in op.polynomial_terms().items()
        for key, c in coeff.items()
    }


def commutator_system(h: DiffOp, spec: AnsatzSpec,
                      rhs: Optional[DiffOp] = None) -> Tuple[List[SparseRow], Optional[List[Fraction]], List[EquationKey]]:
    """Rows of ``[h, K] = rhs`` in the ansatz coefficients of ``K``.

    Each unknown contributes the commutator of ``h`` with a single
    monomial-coefficient term; equations are indexed by derivative and
    monomial. ``h`` must already be bound to rational parameters.
    """
    if h.chart is not spec.chart:
        raise ConfigError(f"operator chart {h.chart.value} differs from ansatz chart {spec.chart.value}")
    unknowns = spec.unknowns()
    logger.info("building commutator system", unknowns=len(unknowns), h_terms=len(h.terms))
    rows: Dict[EquationKey, SparseRow] = {}
    for j, ((a, b), (p, q)) in enumerate(unknowns):
        column = commutator(h, DiffOp(spec.chart, {(a, b): _monomial(spec.chart, p, q)}))
        for key, c in _equations(column).items():
            rows.setdefault(key, {})[j] = c
    targets = _equations(rhs) if rhs is not None else {}
    for key in targets:
        rows.setdefault(key, {})
    keys = sorted(rows)
    values = [targets.get(key, Fraction(0)) for key in keys] if rhs is not None else None
    logger.info("commutator system built", equations=len(keys), unknowns=len(unknowns))
    return [rows[key] for key in keys], values, keys
