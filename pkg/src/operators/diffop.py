"""Differential operators in two variables.

An operator is stored in normal form, coefficients to the left of all
derivatives: ``sum c_ab(x, y) * d_x^a d_y^b``.
"""

from enum import Enum
from fractions import Fraction
from math import comb
from typing import Any, Dict, Iterable, List, Mapping, Optional, Set, Tuple, Union

from structlog import get_logger

from src.algebra import monomials as mono
from src.algebra.mpoly import MPoly, Scalar
from src.algebra.ratfn import Base, FactoredRatFn
from src.core.constants import PARAMETER_VARS, VARIABLE_WEIGHTS
from src.core.exceptions import ChartMismatchError, NotPolynomialError

logger = get_logger()

Coefficient = Union[FactoredRatFn, MPoly, Scalar]
Index = Tuple[int, int]


class Chart(str, Enum):
    """Coordinate chart of an operator."""

    XY = "XY"
    UV = "UV"

    @property
    def vars(self) -> Tuple[str, str]:
        return ("x", "y") if self is Chart.XY else ("u", "v")


def _allowed(chart: Chart) -> Set[str]:
    return set(chart.vars) | set(PARAMETER_VARS)


class DiffOp:
    """Immutable operator ``{(a, b): coefficient}`` on a chart."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms: Optional[Mapping[Index, Coefficient]] = None,
                 check: bool = True):
        self.chart = Chart(chart)
        clean: Dict[Index, FactoredRatFn] = {}
        for index, c in (terms or {}).items():
            c = FactoredRatFn.of(c)
            if not c.is_zero():
                clean[(int(index[0]), int(index[1]))] = c
        if check:
            allowed = _allowed(self.chart)
            for index, c in clean.items():
                stray = c.variables() - allowed
                if stray:
                    raise ChartMismatchError(self.chart.value, sorted(stray))
        self.terms = clean

    @classmethod
    def _raw(cls, chart: Chart, terms: Dict[Index, FactoredRatFn]) -> "DiffOp":
        obj = cls.__new__(cls)
        obj.chart = chart
        obj.terms = {k: c for k, c in terms.items() if not c.is_zero()}
        return obj

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> "DiffOp":
        return cls(chart, {})

    @classmethod
    def scalar(cls, c: Coefficient, chart: Chart) -> "DiffOp":
        """Multiplication by a function (zero-order operator)."""
        return cls(chart, {(0, 0): c})

    @classmethod
    def identity(cls, chart: Chart) -> "DiffOp":
        return cls.scalar(1, chart)

    @classmethod
    def partial(cls, a: int, b: int, chart: Chart, coefficient: Coefficient = 1) -> "DiffOp":
        return cls(chart, {(a, b): coefficient})

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def order(self) -> int:
        return max((a + b for a, b in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, a: int, b: int) -> FactoredRatFn:
        return self.terms.get((a, b), FactoredRatFn.zero())

    def sorted_terms(self) -> List[Tuple[Index, FactoredRatFn]]:
        """Terms by descending order, then descending first index."""
        return sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.terms.values())

    def reduce(self) -> "DiffOp":
        return DiffOp._raw(self.chart, {k: c.reduce() for k, c in self.terms.items()})

    def polynomial_terms(self) -> Dict[Index, MPoly]:
        """Coefficients as polynomials; raises NotPolynomialError otherwise."""
        out = {}
        for index, c in self.terms.items():
            try:
                out[index] = c.as_poly()
            except NotPolynomialError as e:
                raise NotPolynomialError(f"coefficient of d{index} is not polynomial: {c}") from e
        return out

    def weight_profile(self) -> Set[Optional[int]]:
        """Scaling weights of all terms; a single element means homogeneous."""
        wa = VARIABLE_WEIGHTS[self.chart.vars[0]]
        wb = VARIABLE_WEIGHTS[self.chart.vars[1]]
        weights: Set[Optional[int]] = set()
        for (a, b), c in self.terms.items():
            reduced = c.reduce()
            den_w = 0
            for base, e in reduced.den:
                den_w += e * (base.poly.weight() or 0)
            for w in reduced.num.weights():
                weights.add(w - den_w - a * wa - b * wb)
        return weights

    def variables(self) -> Set[str]:
        names: Set[str] = set()
        for c in self.terms.values():
            names |= c.variables()
        return names

    # ------------------------------------------------------------------
    # Linear structure
    # ------------------------------------------------------------------

    def _check(self, other: "DiffOp") -> None:
        if other.chart is not self.chart:
            raise ChartMismatchError(self.chart.value, other.chart.value)

    def __add__(self, other: Any) -> "DiffOp":
        if not isinstance(other, DiffOp):
            if isinstance(other, (MPoly, FactoredRatFn)) or type(other) in (int, Fraction):
                other = DiffOp.scalar(other, self.chart)
            else:
                return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return DiffOp._raw(self.chart, out)

    __radd__ = __add__

    def __neg__(self) -> "DiffOp":
        return DiffOp._raw(self.chart, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: Any) -> "DiffOp":
        if not isinstance(other, DiffOp):
            other = DiffOp.scalar(other, self.chart)
        return self + (-other)

    def __rsub__(self, other: Any) -> "DiffOp":
        return (-self) + other

    def times(self, c: Coefficient) -> "DiffOp":
        """Left multiplication by a function: ``c * A``."""
        c = FactoredRatFn.of(c)
        if c.is_zero():
            return DiffOp.zero(self.chart)
        return DiffOp._raw(self.chart, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: Any) -> "DiffOp":
        if isinstance(other, DiffOp):
            return compose(self, other)
        if isinstance(other, (MPoly, FactoredRatFn)) or type(other) in (int, Fraction):
            return self.times(other)
        return NotImplemented

    def __rmul__(self, other: Any) -> "DiffOp":
        if isinstance(other, (MPoly, FactoredRatFn)) or type(other) in (int, Fraction):
            return self.times(other)
        return NotImplemented

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        return compose(self, other)

    def __pow__(self, power: int) -> "DiffOp":
        result = DiffOp.identity(self.chart)
        for _ in range(power):
            result = compose(result, self)
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        if other.chart is not self.chart:
            return False
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    # ------------------------------------------------------------------
    # Action and substitution
    # ------------------------------------------------------------------

    def apply(self, p: Union[MPoly, FactoredRatFn, Scalar]) -> FactoredRatFn:
        """Image ``A(p)`` of a function."""
        p = FactoredRatFn.of(p)
        vx, vy = self.chart.vars
        derivs: Dict[Index, FactoredRatFn] = {(0, 0): p}

        def deriv(a: int, b: int) -> FactoredRatFn:
            got = derivs.get((a, b))
            if got is None:
                got = deriv(a - 1, b).diff(vx) if a else deriv(a, b - 1).diff(vy)
                derivs[(a, b)] = got
            return got

        result = FactoredRatFn.zero()
        for (a, b), c in self.terms.items():
            d = deriv(a, b)
            if not d.is_zero():
                result = result + c * d
        return result

    def subs(self, bindings: Mapping[str, Union[MPoly, Scalar]],
             base_map: Optional[Mapping[str, Base]] = None) -> "DiffOp":
        """Substitute parameters in every coefficient."""
        clash = set(bindings) & set(self.chart.vars)
        if clash:
            raise ValueError(f"cannot substitute chart variables {sorted(clash)}")
        return DiffOp._raw(self.chart, {k: c.subs(bindings, base_map) for k, c in self.terms.items()})

    def to_triples(self) -> List[Tuple[int, int, str]]:
        """Canonical serialization as ``(a, b, coefficient)`` triples."""
        return [(a, b, c.to_string()) for (a, b), c in self.sorted_terms()]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        vx, vy = self.chart.vars
        parts = []
        for (a, b), c in self.sorted_terms():
            d = "".join(
                f"*d{name}" + (f"^{k}" if k > 1 else "") for name, k in ((vx, a), (vy, b)) if k
            )
            parts.append(f"({c}){d}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DiffOp({self.chart.value}, {self})"


def compose(A: DiffOp, B: DiffOp) -> DiffOp:
    """Operator product ``A o B`` by the Leibniz rule."""
    if A.chart is not B.chart:
        raise ChartMismatchError(A.chart.value, B.chart.value)
    vx, vy = A.chart.vars
    max_a = max((a for a, _ in A.terms), default=0)
    max_b = max((b for _, b in A.terms), default=0)
    out: Dict[Index, FactoredRatFn] = {}
    for (a2, b2), cb in B.terms.items():
        derivs: Dict[Index, FactoredRatFn] = {(0, 0): cb}
        for i in range(max_a + 1):
            if i:
                derivs[(i, 0)] = derivs[(i - 1, 0)].diff(vx)
            for j in range(1, max_b + 1):
                derivs[(i, j)] = derivs[(i, j - 1)].diff(vy)
        for (a1, b1), ca in A.terms.items():
            for i in range(a1 + 1):
                for j in range(b1 + 1):
                    d = derivs[(i, j)]
                    if d.is_zero():
                        continue
                    term = ca * d
                    factor = comb(a1, i) * comb(b1, j)
                    if factor != 1:
                        term = term * factor
                    key = (a1 - i + a2, b1 - j + b2)
                    out[key] = out[key] + term if key in out else term
    return DiffOp._raw(A.chart, out)


def commutator(A: DiffOp, B: DiffOp) -> DiffOp:
    """``[A, B] = A o B - B o A`` in normal form."""
    return compose(A, B) - compose(B, A)


def word_product(factors: Iterable[DiffOp], chart: Chart) -> DiffOp:
    """Left-to-right product of a sequence of operators."""
    result = DiffOp.identity(chart)
    for f in factors:
        result = compose(result, f)
    return result


def monomial_key(chart: Chart, p: int, q: int) -> int:
    vx, vy = chart.vars
    return mono.unit(vx, p) | mono.unit(vy, q) if (p or q) else mono.ONE
