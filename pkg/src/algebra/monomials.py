"""Packed monomial keys.

A monomial over ``VARIABLES`` is stored as one int with ``EXPONENT_BITS``
bits per exponent, x in the most significant field. Comparing keys of equal
total degree as ints is then lexicographic comparison in variable order, so
``(total_degree(k), k)`` is the graded-lex sort key.
"""

from typing import Dict, Iterable, Sequence, Tuple

from src.core.constants import EXPONENT_BITS, MAX_EXPONENT, VARIABLES, VARIABLE_WEIGHTS

NVARS = len(VARIABLES)
INDEX = {name: i for i, name in enumerate(VARIABLES)}
SHIFTS = tuple(EXPONENT_BITS * (NVARS - 1 - i) for i in range(NVARS))
FIELD = MAX_EXPONENT
ONE = 0


def shift_of(name: str) -> int:
    return SHIFTS[INDEX[name]]


def unit(name: str, power: int = 1) -> int:
    """Key of ``name**power``."""
    if power > MAX_EXPONENT:
        raise OverflowError(f"exponent {power} exceeds {MAX_EXPONENT}")
    return power << SHIFTS[INDEX[name]]


def pack(exponents: Sequence[int]) -> int:
    key = 0
    for e, s in zip(exponents, SHIFTS):
        if e < 0 or e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} out of range")
        key |= e << s
    return key


def pack_named(exponents: Dict[str, int]) -> int:
    return sum(unit(name, e) for name, e in exponents.items() if e)


def unpack(key: int) -> Tuple[int, ...]:
    return tuple((key >> s) & FIELD for s in SHIFTS)


def exponent(key: int, name: str) -> int:
    return (key >> SHIFTS[INDEX[name]]) & FIELD


def total_degree(key: int) -> int:
    return sum(unpack(key))


def degree_in(key: int, names: Iterable[str]) -> int:
    return sum(exponent(key, n) for n in names)


def weight(key: int) -> int:
    return sum(VARIABLE_WEIGHTS[name] * e for name, e in zip(VARIABLES, unpack(key)))


def mask_of(names: Iterable[str]) -> int:
    mask = 0
    for name in names:
        mask |= FIELD << SHIFTS[INDEX[name]]
    return mask


def divides(a: int, b: int) -> bool:
    """True when monomial ``a`` divides monomial ``b``."""
    for s in SHIFTS:
        if (a >> s) & FIELD > (b >> s) & FIELD:
            return False
    return True


def grlex_key(key: int) -> Tuple[int, int]:
    return (total_degree(key), key)


def to_string(key: int) -> str:
    parts = []
    for name, e in zip(VARIABLES, unpack(key)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"
