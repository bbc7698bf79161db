"""Reflection y -> -y and restriction of even operators to u = x, v = y^2."""

from typing import Dict, Mapping, Optional, Tuple

from src.algebra import monomials as mono
from src.algebra.mpoly import MPoly
from src.algebra.ratfn import Base, FactoredRatFn
from src.core.exceptions import ChartMismatchError, ParityViolationError
from src.operators.diffop import Chart, DiffOp

_Y_SHIFT = mono.shift_of("y")
_X_SHIFT = mono.shift_of("x")
_Y_MASK = mono.FIELD << _Y_SHIFT
_X_MASK = mono.FIELD << _X_SHIFT


def _reflect_poly(p: MPoly) -> MPoly:
    return MPoly({k: (-c if mono.exponent(k, "y") % 2 else c) for k, c in p.items()})


def reflect_y(A: DiffOp) -> DiffOp:
    """The operator ``A(x, -y)``: coefficients reflected, d_y -> -d_y."""
    if A.chart is not Chart.XY:
        raise ChartMismatchError(A.chart.value, Chart.XY.value)
    out = {}
    for (a, b), c in A.terms.items():
        for base, _ in c.den:
            if _reflect_poly(base.poly) != base.poly:
                raise ParityViolationError(f"denominator base {base.name} is not even in y")
        num = _reflect_poly(c.num)
        out[(a, b)] = FactoredRatFn(-num if b % 2 else num, c.den)
    return DiffOp._raw(Chart.XY, out)


def parity(A: DiffOp) -> str:
    """``"even"`` when A(x,-y) = A, ``"odd"`` when A(x,-y) = -A, else ``"mixed"``."""
    reflected = reflect_y(A)
    if reflected == A:
        return "even"
    if reflected == -A:
        return "odd"
    return "mixed"


def _even_poly_to_uv(p: MPoly, where: str) -> MPoly:
    out = {}
    for key, c in p.items():
        ey = (key >> _Y_SHIFT) & mono.FIELD
        if ey % 2:
            raise ParityViolationError(f"{where}: odd power y^{ey} in {mono.to_string(key)}")
        ex = (key >> _X_SHIFT) & mono.FIELD
        rest = key & ~(_X_MASK | _Y_MASK)
        out[rest | mono.unit("u", ex) | mono.unit("v", ey // 2)] = c
    return MPoly(out)


def _dy_expansion(b: int) -> Dict[Tuple[int, int], int]:
    """``d_y^b`` on functions of ``v = y^2`` as ``{(m, k): c}`` meaning ``c y^m d_v^k``."""
    terms = {(0, 0): 1}
    for _ in range(b):
        nxt: Dict[Tuple[int, int], int] = {}
        for (m, k), c in terms.items():
            if m:
                nxt[(m - 1, k)] = nxt.get((m - 1, k), 0) + m * c
            nxt[(m + 1, k + 1)] = nxt.get((m + 1, k + 1), 0) + 2 * c
        terms = nxt
    return terms


def restrict_to_even(A: DiffOp, base_map: Optional[Mapping[str, Base]] = None) -> DiffOp:
    """Operator induced on functions of ``(u, v) = (x, y^2)``.

    ``base_map`` sends XY denominator bases to their UV counterparts, e.g.
    ``{"D_xy": D_uv}``.
    """
    if A.chart is not Chart.XY:
        raise ChartMismatchError(A.chart.value, Chart.XY.value)
    y = MPoly.var("y")
    collected: Dict[Tuple[int, int], FactoredRatFn] = {}
    for (a, b), c in A.terms.items():
        for (m, k), n in _dy_expansion(b).items():
            term = c * (y ** m) * n
            key = (a, k)
            collected[key] = collected[key] + term if key in collected else term

    out = {}
    for key, c in collected.items():
        if c.is_zero():
            continue
        den = []
        for base, e in c.den:
            if base_map is None or base.name not in base_map:
                raise ParityViolationError(f"no UV counterpart for denominator base {base.name}")
            target = base_map[base.name]
            if _even_poly_to_uv(base.poly, base.name) != target.poly:
                raise ParityViolationError(f"base {base.name} does not restrict to {target.name}")
            den.append((target, e))
        out[key] = FactoredRatFn(_even_poly_to_uv(c.num, f"coefficient of d{key}"), den)
    return DiffOp(Chart.UV, out)


def even_to_uv(p: MPoly) -> MPoly:
    """Rewrite a polynomial even in y through u = x, v = y^2."""
    return _even_poly_to_uv(p, "polynomial")
