"""Gauge conjugation by powers of declared base polynomials."""

from typing import Dict, Iterable, Tuple, Union

from structlog import get_logger

from src.algebra.mpoly import MPoly, Scalar
from src.algebra.ratfn import Base, FactoredRatFn
from src.operators.diffop import DiffOp, compose

logger = get_logger()

Exponent = Union[MPoly, Scalar]


def conjugate_by_power(A: DiffOp, base: Base, s: Exponent) -> DiffOp:
    """Return ``base^(-s) o A o base^s``.

    Each derivative is replaced by ``d + s * (d base) / base`` and the
    products are expanded with the Leibniz rule; ``s`` may be symbolic in
    the couplings (for instance ``nu/2`` or ``1/2 - nu``).
    """
    s = MPoly.lift(s)
    if s.is_zero() or A.is_zero():
        return A
    vx, vy = A.chart.vars
    shifted = []
    for name, index in ((vx, (1, 0)), (vy, (0, 1))):
        log_derivative = FactoredRatFn.over(s * base.poly.diff(name), base)
        shifted.append(DiffOp._raw(A.chart, {index: FactoredRatFn.of(1), (0, 0): log_derivative}))
    lx, ly = shifted

    powers: Dict[Tuple[str, int], DiffOp] = {("x", 0): DiffOp.identity(A.chart), ("y", 0): DiffOp.identity(A.chart)}

    def power(which: str, k: int) -> DiffOp:
        got = powers.get((which, k))
        if got is None:
            got = compose(power(which, k - 1), lx if which == "x" else ly)
            powers[(which, k)] = got
        return got

    result = DiffOp.zero(A.chart)
    for (a, b), c in A.terms.items():
        result = result + compose(power("x", a), power("y", b)).times(c)
    logger.debug("conjugated operator", base=base.name, exponent=str(s), terms=len(result.terms))
    return result


def gauge_transform(A: DiffOp, factors: Iterable[Tuple[Base, Exponent]]) -> DiffOp:
    """Return ``p o A o p^(-1)`` for ``p = prod base**s``."""
    result = A
    for base, s in factors:
        result = conjugate_by_power(result, base, -MPoly.lift(s))
    return result
