"""Rational functions whose denominators are powers of declared base polynomials."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple, Union

from src.algebra.mpoly import MPoly, Scalar
from src.core.constants import DECLARED_BASES
from src.core.exceptions import NotPolynomialError


@dataclass(frozen=True)
class Base:
    """A named denominator base, e.g. ``Base("D_xy", D)``."""

    name: str
    poly: MPoly

    def __post_init__(self):
        if self.name not in DECLARED_BASES:
            raise ValueError(f"{self.name} is not a declared denominator base")
        if self.poly.is_constant():
            raise ValueError(f"base {self.name} must be non-constant")


@lru_cache(maxsize=512)
def _base_power(base: Base, e: int) -> MPoly:
    return base.poly ** e


Den = Tuple[Tuple[Base, int], ...]


def _merge(a: Den, b: Den, combine) -> Dict[str, Tuple[Base, int]]:
    out: Dict[str, Tuple[Base, int]] = {base.name: (base, e) for base, e in a}
    for base, e in b:
        if base.name in out:
            known, e0 = out[base.name]
            if known.poly != base.poly:
                raise ValueError(f"conflicting definitions of base {base.name}")
            out[base.name] = (known, combine(e0, e))
        else:
            out[base.name] = (base, combine(0, e))
    return out


def _den(entries: Iterable[Tuple[Base, int]]) -> Den:
    return tuple(sorted(((b, e) for b, e in entries if e), key=lambda be: be[0].name))


class FactoredRatFn:
    """``numerator / prod(base**e)`` with equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: Iterable[Tuple[Base, int]] = ()):
        self.num = num
        self.den: Den = _den(den) if num else ()

    @classmethod
    def of(cls, value: Union[MPoly, Scalar, "FactoredRatFn"]) -> "FactoredRatFn":
        if isinstance(value, FactoredRatFn):
            return value
        return cls(MPoly.lift(value))

    @classmethod
    def over(cls, num: Union[MPoly, Scalar], base: Base, exponent: int = 1) -> "FactoredRatFn":
        return cls(MPoly.lift(num), ((base, exponent),))

    @classmethod
    def zero(cls) -> "FactoredRatFn":
        return cls(MPoly.zero())

    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    @property
    def has_denominator(self) -> bool:
        return bool(self.den)

    def denominator(self) -> MPoly:
        result = MPoly.one()
        for base, e in self.den:
            result = result * _base_power(base, e)
        return result

    def _expand_to(self, target: Dict[str, Tuple[Base, int]]) -> MPoly:
        num = self.num
        mine = {b.name: e for b, e in self.den}
        for name, (base, e) in target.items():
            extra = e - mine.get(name, 0)
            if extra:
                num = num * _base_power(base, extra)
        return num

    def __add__(self, other: Any) -> "FactoredRatFn":
        if not isinstance(other, FactoredRatFn):
            if isinstance(other, MPoly) or type(other) in (int, Fraction):
                other = FactoredRatFn.of(other)
            else:
                return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return FactoredRatFn(self.num + other.num, self.den)
        target = _merge(self.den, other.den, max)
        num = self._expand_to(target) + other._expand_to(target)
        return FactoredRatFn(num, target.values())

    __radd__ = __add__

    def __neg__(self) -> "FactoredRatFn":
        return FactoredRatFn(-self.num, self.den)

    def __sub__(self, other: Any) -> "FactoredRatFn":
        if not isinstance(other, FactoredRatFn):
            other = FactoredRatFn.of(other)
        return self + (-other)

    def __rsub__(self, other: Any) -> "FactoredRatFn":
        return (-self) + other

    def __mul__(self, other: Any) -> "FactoredRatFn":
        if isinstance(other, FactoredRatFn):
            if not other.den:
                return FactoredRatFn(self.num * other.num, self.den)
            if not self.den:
                return FactoredRatFn(self.num * other.num, other.den)
            merged = _merge(self.den, other.den, lambda a, b: a + b)
            return FactoredRatFn(self.num * other.num, merged.values())
        if isinstance(other, MPoly) or type(other) in (int, Fraction):
            return FactoredRatFn(self.num * other, self.den)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (MPoly, int, Fraction)):
            other = FactoredRatFn.of(other)
        if not isinstance(other, FactoredRatFn):
            return NotImplemented
        return (self - other).is_zero()

    # equal values can have different representations
    __hash__ = None  # type: ignore[assignment]

    # ------------------------------------------------------------------

    def diff(self, name: str) -> "FactoredRatFn":
        """Quotient rule, keeping the denominator in factored form."""
        result = FactoredRatFn(self.num.diff(name), self.den)
        for base, e in self.den:
            db = base.poly.diff(name)
            if db.is_zero():
                continue
            bumped = [(b, k + 1 if b.name == base.name else k) for b, k in self.den]
            result = result + FactoredRatFn(self.num * db * (-e), bumped)
        return result

    def reduce(self) -> "FactoredRatFn":
        """Cancel base factors that divide the numerator exactly."""
        num = self.num
        den = []
        for base, e in self.den:
            while e:
                q = num.exact_div(base.poly)
                if q is None:
                    break
                num, e = q, e - 1
            den.append((base, e))
        return FactoredRatFn(num, den)

    def is_polynomial(self) -> bool:
        return not self.reduce().den

    def as_poly(self) -> MPoly:
        reduced = self.reduce()
        if reduced.den:
            raise NotPolynomialError(f"not a polynomial: {reduced}")
        return reduced.num

    def subs(self, bindings: Mapping[str, Union[MPoly, Scalar]],
             base_map: Optional[Mapping[str, Base]] = None) -> "FactoredRatFn":
        """Substitute in the numerator; bases must be left unchanged or remapped."""
        den = []
        for base, e in self.den:
            if base_map and base.name in base_map:
                target = base_map[base.name]
                if base.poly.subs(bindings) != target.poly:
                    raise ValueError(f"base {base.name} does not map onto {target.name}")
                den.append((target, e))
            elif base.poly.variables() & set(bindings):
                raise ValueError(f"substitution changes base {base.name}")
            else:
                den.append((base, e))
        return FactoredRatFn(self.num.subs(bindings), den)

    def evaluate(self, values: Mapping[str, Any]) -> Any:
        value = self.num.evaluate(values)
        for base, e in self.den:
            value = value / base.poly.evaluate(values) ** e
        return value

    def variables(self):
        names = set(self.num.variables())
        for base, _ in self.den:
            names |= base.poly.variables()
        return names

    def to_string(self) -> str:
        if not self.den:
            return self.num.to_string()
        den = "*".join(b.name if e == 1 else f"{b.name}^{e}" for b, e in self.den)
        return f"({self.num.to_string()})/({den})"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"FactoredRatFn({self.to_string()!r})"
