"""Exact characteristic polynomials of representation matrices."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Sequence, Tuple, Union

from structlog import get_logger

from src.algebra import upoly
from src.algebra.mpoly import MPoly, Scalar
from src.models.a2 import mu, tau
from src.qes.linalg import Matrix, identity, is_zero_matrix, lift_matrix, mat_mul
from src.qes.representation import RepMatrix

logger = get_logger()


@dataclass
class CharPoly:
    """``det(E - M) = sum coefficients[i] * E^(d - i)``; coefficients[0] is 1."""

    coefficients: List[MPoly]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_numeric(self) -> bool:
        return all(c.is_constant() for c in self.coefficients)

    def specialize(self, bindings: Mapping[str, Union[MPoly, Scalar]]) -> "CharPoly":
        return CharPoly([c.subs(bindings) for c in self.coefficients])

    def rational_coefficients(self) -> List[Fraction]:
        if not self.is_numeric():
            raise ValueError("characteristic polynomial still depends on parameters")
        return [Fraction(c.constant_term()) for c in self.coefficients]

    def trace(self) -> MPoly:
        return -self.coefficients[1] if self.degree >= 1 else MPoly.zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharPoly):
            return NotImplemented
        return len(self.coefficients) == len(other.coefficients) and all(
            a == b for a, b in zip(self.coefficients, other.coefficients)
        )

    __hash__ = None  # type: ignore[assignment]

    def to_strings(self) -> List[str]:
        return [c.to_string() for c in self.coefficients]

    def to_dict(self) -> Dict[str, Any]:
        return {"degree": self.degree, "coefficients": self.to_strings()}


def _matvec(a: Matrix, v: List[MPoly]) -> List[MPoly]:
    out = []
    for row in a:
        acc = MPoly.zero()
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def _dot(u: Sequence[MPoly], v: Sequence[MPoly]) -> MPoly:
    acc = MPoly.zero()
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    return acc


def berkowitz(rows: Sequence[Sequence]) -> List[MPoly]:
    """Division-free characteristic polynomial coefficients, highest degree first."""
    m = lift_matrix(rows)
    n = len(m)
    poly: List[MPoly] = [MPoly.one()]
    for k in range(n):
        leading = [row[:k] for row in m[:k]]
        r = m[k][:k]
        c = [m[i][k] for i in range(k)]
        toeplitz = [MPoly.one(), -m[k][k]]
        ac = c
        for _ in range(k):
            toeplitz.append(-_dot(r, ac))
            ac = _matvec(leading, ac)
        new = []
        for i in range(k + 2):
            acc = MPoly.zero()
            for j, p in enumerate(poly):
                if 0 <= i - j < len(toeplitz) and p and toeplitz[i - j]:
                    acc = acc + toeplitz[i - j] * p
            new.append(acc)
        poly = new
    return poly


def char_poly(matrix: Union[RepMatrix, Sequence[Sequence]]) -> CharPoly:
    rows = matrix.entries if isinstance(matrix, RepMatrix) else matrix
    coefficients = berkowitz(rows)
    logger.debug("characteristic polynomial", degree=len(coefficients) - 1)
    return CharPoly(coefficients)


def cayley_hamilton_holds(matrix: Union[RepMatrix, Sequence[Sequence]], poly: CharPoly) -> bool:
    """``p(M) = 0`` evaluated by Horner's rule on matrices."""
    rows = lift_matrix(matrix.entries if isinstance(matrix, RepMatrix) else matrix)
    n = len(rows)
    acc = [[MPoly.zero()] * n for _ in range(n)]
    eye = identity(n)
    for c in poly.coefficients:
        acc = mat_mul(acc, rows)
        for i in range(n):
            acc[i][i] = acc[i][i] + c * eye[i][i]
    return is_zero_matrix(acc)


def _mpoly_product(factors: Sequence[Sequence[MPoly]]) -> List[MPoly]:
    result: List[MPoly] = [MPoly.one()]
    for f in factors:
        out = [MPoly.zero()] * (len(result) + len(f) - 1)
        for i, a in enumerate(result):
            for j, b in enumerate(f):
                out[i + j] = out[i + j] + a * b
        result = out
    return result


def sextic_factors() -> List[List[MPoly]]:
    """The three quadratic factors of the reference n = 2 sextic."""
    return [
        [MPoly.one(), 4 * tau, 4 * mu],
        [MPoly.one(), 8 * tau, 4 * mu + 12 * tau**2],
        [MPoly.one(), 12 * tau, 4 * mu + 16 * tau**2],
    ]


def sextic() -> CharPoly:
    """``(E^2 + 4 tau E + 4 mu)(E^2 + 8 tau E + 4 mu + 12 tau^2)(E^2 + 12 tau E + 4 mu + 16 tau^2)``."""
    return CharPoly(_mpoly_product(sextic_factors()))


def numeric_coefficients(poly: CharPoly, bindings: Mapping[str, Union[MPoly, Scalar]]) -> List[Fraction]:
    return poly.specialize(bindings).rational_coefficients()


def as_upoly(poly: CharPoly) -> upoly.UPoly:
    return upoly.trim(poly.rational_coefficients())


def _divmod_monic(p: Sequence[MPoly], d: Sequence[MPoly]) -> Tuple[List[MPoly], List[MPoly]]:
    """Long division in E by a monic divisor; coefficients highest degree first."""
    rem = list(p)
    quot: List[MPoly] = []
    for i in range(len(p) - len(d) + 1):
        lead = rem[i]
        quot.append(lead)
        if lead:
            for j in range(1, len(d)):
                rem[i + j] = rem[i + j] - lead * d[j]
    return quot, rem[len(p) - len(d) + 1:]


def factor_multiplicity(poly: CharPoly, factor: Sequence[MPoly]) -> int:
    """How many times the monic ``factor`` divides ``poly`` exactly over Q[tau, mu, lam]."""
    count = 0
    current = list(poly.coefficients)
    while len(current) >= len(factor):
        quot, rem = _divmod_monic(current, factor)
        if any(not r.is_zero() for r in rem):
            break
        current = quot
        count += 1
    return count
