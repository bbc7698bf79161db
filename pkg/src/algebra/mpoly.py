"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are ``int`` whenever integral and ``Fraction`` otherwise; both
compare and hash consistently, so term dictionaries stay canonical.
"""

import heapq
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Set, Tuple, Union

from src.algebra import monomials as mono
from src.core.constants import VARIABLES

Scalar = Union[int, Fraction]


def _norm(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(a: Scalar, b: Scalar) -> Scalar:
    if type(a) is int and type(b) is int and a % b == 0:
        return a // b
    return _norm(Fraction(a) / b)


def _coeff_string(c: Scalar) -> str:
    if type(c) is Fraction:
        return f"{c.numerator}/{c.denominator}"
    return str(c)


class MPoly:
    """Immutable sparse polynomial over ``VARIABLES``.

    Supports ``+ - *`` and non-negative integer powers with other MPolys and
    with ``int``/``Fraction`` scalars, so formulas can be transcribed directly::

        x, y, tau = variables("x", "y", "tau")
        p = 4 * x**3 + 27 * y**2 - 108 * tau * x * y**2
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, Scalar]] = None):
        clean: Dict[int, Scalar] = {}
        if terms:
            for key, c in terms.items():
                c = _norm(c if type(c) in (int, Fraction) else Fraction(c))
                if c:
                    clean[key] = c
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: Dict[int, Scalar]) -> "MPoly":
        # terms must already be normalized and zero-free
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "MPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "MPoly":
        return cls._raw({mono.ONE: 1})

    @classmethod
    def const(cls, c: Scalar) -> "MPoly":
        c = _norm(Fraction(c)) if type(c) not in (int, Fraction) else _norm(c)
        return cls._raw({mono.ONE: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        if name not in mono.INDEX:
            raise KeyError(f"unknown variable {name}")
        return cls._raw({mono.unit(name, power): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff: Scalar = 1) -> "MPoly":
        return cls({mono.pack_named(exponents): coeff})

    @classmethod
    def lift(cls, value: Union["MPoly", Scalar]) -> "MPoly":
        if isinstance(value, MPoly):
            return value
        return cls.const(value)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def nterms(self) -> int:
        return len(self._terms)

    def items(self) -> Iterator[Tuple[int, Scalar]]:
        return iter(self._terms.items())

    def coeff(self, exponents: Mapping[str, int]) -> Scalar:
        return self._terms.get(mono.pack_named(exponents), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and mono.ONE in self._terms)

    def constant_term(self) -> Scalar:
        return self._terms.get(mono.ONE, 0)

    def variables(self) -> Set[str]:
        present = 0
        for key in self._terms:
            present |= key
        return {name for name in VARIABLES if mono.exponent(present, name)}

    def degree(self, name: Optional[str] = None) -> int:
        """Total degree, or degree in one variable; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if name is None:
            return max(mono.total_degree(k) for k in self._terms)
        return max(mono.exponent(k, name) for k in self._terms)

    def degree_in(self, names: Iterable[str]) -> int:
        names = tuple(names)
        if not self._terms:
            return -1
        return max(mono.degree_in(k, names) for k in self._terms)

    def weights(self) -> Set[int]:
        return {mono.weight(k) for k in self._terms}

    def weight(self) -> Optional[int]:
        """Scaling weight when homogeneous, else None (zero has no weight)."""
        w = self.weights()
        return w.pop() if len(w) == 1 else None

    def sorted_terms(self) -> List[Tuple[int, Scalar]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: mono.grlex_key(kv[0]), reverse=True)

    def leading_term(self) -> Tuple[int, Scalar]:
        key = max(self._terms, key=mono.grlex_key)
        return key, self._terms[key]

    def coefficients_in(self, names: Iterable[str]) -> Dict[int, "MPoly"]:
        """Split into ``{monomial key in names: coefficient polynomial in the rest}``."""
        mask = mono.mask_of(names)
        out: Dict[int, Dict[int, Scalar]] = {}
        for key, c in self._terms.items():
            out.setdefault(key & mask, {})[key & ~mask] = c
        return {k: MPoly._raw(v) for k, v in out.items()}

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: Any) -> "MPoly":
        if not isinstance(other, MPoly):
            if type(other) not in (int, Fraction):
                return NotImplemented
            other = MPoly.const(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        get = out.get
        for key, c in other._terms.items():
            s = get(key, 0) + c
            if s:
                out[key] = _norm(s)
            else:
                out.pop(key, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Any) -> "MPoly":
        if not isinstance(other, MPoly):
            if type(other) not in (int, Fraction):
                return NotImplemented
            other = MPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: Any) -> "MPoly":
        return (-self) + other

    def scale(self, c: Scalar) -> "MPoly":
        c = _norm(c)
        if not c:
            return MPoly.zero()
        if c == 1:
            return self
        return MPoly._raw({k: _norm(v * c) for k, v in self._terms.items()})

    def __mul__(self, other: Any) -> "MPoly":
        if not isinstance(other, MPoly):
            if type(other) not in (int, Fraction):
                return NotImplemented
            return self.scale(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return MPoly.zero()
        if len(a) < len(b):
            a, b = b, a
        out: Dict[int, Scalar] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MPoly._raw({k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "MPoly":
        if type(other) not in (int, Fraction):
            return NotImplemented
        return self.scale(Fraction(1) / other)

    def __pow__(self, power: int) -> "MPoly":
        if not isinstance(power, int) or power < 0:
            raise ValueError("MPoly powers must be non-negative integers")
        result = MPoly.one()
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MPoly):
            return self._terms == other._terms
        if type(other) in (int, Fraction):
            return self._terms == MPoly.const(other)._terms
        return NotImplemented

    def __ne__(self, other: object) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ------------------------------------------------------------------
    # Calculus and substitution
    # ------------------------------------------------------------------

    def diff(self, name: str, times: int = 1) -> "MPoly":
        """Exact partial derivative."""
        result = self
        shift = mono.shift_of(name)
        step = 1 << shift
        for _ in range(times):
            out: Dict[int, Scalar] = {}
            for key, c in result._terms.items():
                e = (key >> shift) & mono.FIELD
                if e:
                    out[key - step] = c * e
            result = MPoly._raw(out)
        return result

    def subs(self, bindings: Mapping[str, Union["MPoly", Scalar]]) -> "MPoly":
        """Substitute variables by polynomials or rationals, simultaneously."""
        active = {name: MPoly.lift(val) for name, val in bindings.items() if name in mono.INDEX}
        if not active or not self._terms:
            return self
        mask = mono.mask_of(active)
        shifts = [(name, mono.shift_of(name)) for name in active]
        powers: Dict[Tuple[str, int], MPoly] = {}

        def power(name: str, e: int) -> MPoly:
            cached = powers.get((name, e))
            if cached is None:
                cached = active[name] ** e
                powers[(name, e)] = cached
            return cached

        grouped: Dict[int, Dict[int, Scalar]] = {}
        for key, c in self._terms.items():
            grouped.setdefault(key & mask, {})[key & ~mask] = c
        result = MPoly.zero()
        for bound_key, rest in grouped.items():
            factor = MPoly.one()
            for name, shift in shifts:
                e = (bound_key >> shift) & mono.FIELD
                if e:
                    factor = factor * power(name, e)
            result = result + factor * MPoly._raw(rest)
        return result

    def evaluate(self, values: Mapping[str, Any]) -> Any:
        """Evaluate at numeric values; exact when every value is int/Fraction."""
        exact = all(type(v) in (int, Fraction) for v in values.values())
        total: Any = 0
        for key, c in self._terms.items():
            term: Any = c if exact else float(c)
            for name, e in zip(VARIABLES, mono.unpack(key)):
                if e:
                    if name not in values:
                        raise KeyError(f"no value for {name}")
                    term = term * values[name] ** e
            total = total + term
        return total

    def exact_div(self, divisor: "MPoly") -> Optional["MPoly"]:
        """Quotient when ``divisor`` divides ``self`` exactly, else None."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lk, lc = divisor.leading_term()
        rest = dict(self._terms)
        # max-heap on the graded-lex key; stale entries are skipped on pop
        heap = [(-mono.total_degree(k), -k) for k in rest]
        heapq.heapify(heap)
        quotient: Dict[int, Scalar] = {}
        dterms = [(dk, dc) for dk, dc in divisor._terms.items() if dk != lk]
        while rest:
            _, neg_key = heapq.heappop(heap)
            rk = -neg_key
            rc = rest.pop(rk, None)
            if rc is None:
                continue
            if not mono.divides(lk, rk):
                return None
            qk = rk - lk
            qc = _div(rc, lc)
            quotient[qk] = qc
            for dk, dc in dterms:
                k = qk + dk
                old = rest.get(k)
                s = (old or 0) - qc * dc
                if s:
                    rest[k] = _norm(s)
                    if old is None:
                        heapq.heappush(heap, (-mono.total_degree(k), -k))
                elif old is not None:
                    del rest[k]
        return MPoly._raw(quotient)

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def to_string(self) -> str:
        """Canonical text: terms in descending graded-lex order."""
        if not self._terms:
            return "0"
        out = []
        for i, (key, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            body = mono.to_string(key)
            if key == mono.ONE:
                text = _coeff_string(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{_coeff_string(mag)}*{body}"
            if i == 0:
                out.append(text if sign == "+" else f"-{text}")
            else:
                out.append(f" {sign} {text}")
        return "".join(out)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"MPoly({self.to_string()!r})"


def variables(*names: str) -> Tuple[MPoly, ...]:
    """Generator polynomials for the named variables."""
    return tuple(MPoly.var(n) for n in names)
