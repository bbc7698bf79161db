"""Monomial bases of the invariant polynomial spaces P_n and Q_n."""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from src.algebra import monomials as mono
from src.algebra.mpoly import MPoly
from src.operators.diffop import Chart


@dataclass(frozen=True)
class MonomialBasis:
    """Ordered monomials ``x^p y^q`` (chart XY) or ``u^p v^q`` (chart UV).

    ``kind`` is ``"P"`` for ``p + q <= n`` and ``"Q"`` for ``p + 2q <= n``;
    both are listed by ascending grade, higher powers of the first chart
    variable first within a grade.
    """

    kind: str
    n: int
    chart: Chart
    exponents: Tuple[Tuple[int, int], ...]
    _index: Dict[Tuple[int, int], int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._index.update({pq: i for i, pq in enumerate(self.exponents)})

    def __len__(self) -> int:
        return len(self.exponents)

    @property
    def dimension(self) -> int:
        return len(self.exponents)

    def key(self, i: int) -> int:
        p, q = self.exponents[i]
        vx, vy = self.chart.vars
        return mono.unit(vx, p) | mono.unit(vy, q)

    def monomial(self, i: int) -> MPoly:
        return MPoly._raw({self.key(i): 1})

    def monomials(self) -> List[MPoly]:
        return [self.monomial(i) for i in range(len(self))]

    def labels(self) -> List[str]:
        return [mono.to_string(self.key(i)) for i in range(len(self))]

    def index_of(self, p: int, q: int) -> Optional[int]:
        return self._index.get((p, q))

    def split(self, poly: MPoly) -> Tuple[Dict[int, MPoly], List[str]]:
        """Coordinates ``{basis index: parameter polynomial}`` plus monomials outside the span."""
        vx, vy = self.chart.vars
        coords: Dict[int, MPoly] = {}
        outside: List[str] = []
        for key, coeff in poly.coefficients_in(self.chart.vars).items():
            i = self.index_of(mono.exponent(key, vx), mono.exponent(key, vy))
            if i is None:
                outside.append(mono.to_string(key))
            else:
                coords[i] = coeff
        return coords, sorted(outside)

    def combination(self, coordinates: List) -> MPoly:
        """``sum c_i * monomial_i``."""
        total = MPoly.zero()
        for i, c in enumerate(coordinates):
            if c:
                total = total + self.monomial(i) * c
        return total

    def grade(self, i: int) -> int:
        p, q = self.exponents[i]
        return p + q if self.kind == "P" else p + 2 * q


def pn_basis(n: int, chart: Chart = Chart.XY) -> MonomialBasis:
    """Basis of ``P_n = span{x^p y^q : p + q <= n}``, dimension (n+1)(n+2)/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    exps = tuple((d - q, q) for d in range(n + 1) for q in range(d + 1))
    return MonomialBasis("P", n, Chart(chart), exps)


def qn_basis(n: int) -> MonomialBasis:
    """Basis of ``Q_n = span{u^p v^q : p + 2q <= n}``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    exps = tuple((d - 2 * q, q) for d in range(n + 1) for q in range(d // 2 + 1))
    return MonomialBasis("Q", n, Chart.UV, exps)


def space_is_stable(basis: MonomialBasis, substitution: Mapping[str, MPoly]) -> bool:
    """True when the substitution maps every basis monomial back into the span.

    P_n is stable under affine maps of (x, y); Q_n under
    ``u -> u + A``, ``v -> v + A_v u^2 + B u + C``.
    """
    for poly in basis.monomials():
        _, outside = basis.split(poly.subs(substitution))
        if outside:
            return False
    return True
