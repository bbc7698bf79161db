"""Roots of rational characteristic polynomials.

The polynomial is first split exactly into squarefree factors, so
multiplicities come from arithmetic rather than from clustering floats.
Each factor is solved by Aberth iteration from a deterministic starting
ring; exact rational and quadratic-surd roots are recognised afterwards
and verified by exact division.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from structlog import get_logger
from tenacity import RetryError, retry, retry_if_exception_type, stop_after_attempt

from src.algebra import upoly
from src.core.config import get_settings
from src.core.exceptions import NonConvergenceError

logger = get_logger()


@dataclass(frozen=True)
class QuadraticSurd:
    """``a + b * sqrt(d)`` with ``d`` a squarefree integer (``d = -1`` is i)."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def to_complex(self) -> complex:
        if not self.b:
            return complex(self.a)
        if self.d < 0:
            return complex(float(self.a), float(self.b) * math.sqrt(-self.d))
        return complex(float(self.a) + float(self.b) * math.sqrt(self.d), 0.0)

    def __str__(self) -> str:
        a = _fmt(self.a)
        if not self.b:
            return a
        radical = "i" if self.d == -1 else (f"i*sqrt({-self.d})" if self.d < 0 else f"sqrt({self.d})")
        mag = abs(self.b)
        term = radical if mag == 1 else f"{_fmt(mag)}*{radical}"
        sign = "-" if self.b < 0 else "+"
        if not self.a:
            return term if sign == "+" else f"-{term}"
        return f"{a} {sign} {term}"


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class Root:
    value: complex
    multiplicity: int
    exact: Optional[QuadraticSurd] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"re": self.value.real, "im": self.value.imag, "multiplicity": self.multiplicity}
        if self.exact is not None:
            out["exact"] = str(self.exact)
        return out


# ----------------------------------------------------------------------
# Aberth iteration
# ----------------------------------------------------------------------


def _ring(coeffs: np.ndarray, rotation: int) -> np.ndarray:
    n = len(coeffs) - 1
    radius = 1.0 + float(np.max(np.abs(coeffs[1:] / coeffs[0])))
    offset = 0.4 + 0.7 * rotation
    return radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + offset))


def aberth(coeffs: Sequence[complex], rotation: int = 0, tolerance: Optional[float] = None,
           max_iterations: Optional[int] = None) -> np.ndarray:
    """All roots of a polynomial with (numerically) simple roots."""
    settings = get_settings()
    tolerance = settings.root_tolerance if tolerance is None else tolerance
    max_iterations = settings.root_max_iterations if max_iterations is None else max_iterations
    c = np.asarray(coeffs, dtype=complex)
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    if n == 1:
        return np.array([-c[1] / c[0]])
    dc = np.polyder(c)
    z = _ring(c, rotation)
    for iteration in range(max_iterations):
        p = np.polyval(c, z)
        dp = np.polyval(dc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        repulsion = (1.0 / diff).sum(axis=1) - 1.0  # diagonal contributed 1
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(p == 0, 0, p / dp)
            step = np.where(p == 0, 0, ratio / (1 - ratio * repulsion))
        if not np.all(np.isfinite(step)):
            raise NonConvergenceError(f"Aberth step diverged at iteration {iteration}")
        z = z - step
        if np.all(np.abs(step) <= tolerance * (1 + np.abs(z))):
            return _polish(c, dc, z)
    raise NonConvergenceError(f"Aberth iteration did not converge in {max_iterations} steps (degree {n})")


def _polish(c: np.ndarray, dc: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    for _ in range(steps):
        dp = np.polyval(dc, z)
        safe = np.abs(dp) > 0
        z = np.where(safe, z - np.polyval(c, z) / np.where(safe, dp, 1), z)
    return z


def solve_simple(coeffs: Sequence[complex]) -> np.ndarray:
    """Aberth with retries on a rotated starting ring."""
    attempts = get_settings().root_retry_attempts
    state = {"rotation": 0}

    @retry(stop=stop_after_attempt(attempts), retry=retry_if_exception_type(NonConvergenceError))
    def attempt() -> np.ndarray:
        rotation = state["rotation"]
        state["rotation"] += 1
        if rotation:
            logger.warning("retrying root refinement", rotation=rotation)
        return aberth(coeffs, rotation=rotation)

    try:
        return attempt()
    except RetryError as e:
        raise NonConvergenceError(f"root refinement failed after {attempts} attempts") from e


# ----------------------------------------------------------------------
# Exact recognition
# ----------------------------------------------------------------------


def squarefree_part(n: int) -> Tuple[int, int]:
    """``n = s^2 * d`` with ``d`` squarefree; returns ``(s, d)`` (sign kept on d)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, d = 1, 1
    p = 2
    while p * p <= n and p < 100000:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(n)
    if r * r == n:
        s *= r
    else:
        d *= n
    return s, sign * d


def _surd(disc: Fraction) -> Tuple[Fraction, int]:
    """``sqrt(disc) = k * sqrt(d)``."""
    s, d = squarefree_part(disc.numerator * disc.denominator)
    return Fraction(s, disc.denominator), d


def _snap(value: float, limit: int = 10**6) -> Fraction:
    return Fraction(value).limit_denominator(limit)


def _exact_roots(factor: upoly.UPoly, approx: np.ndarray) -> Tuple[List[QuadraticSurd], upoly.UPoly]:
    """Peel rational and quadratic-surd roots off ``factor``; returns them and the cofactor."""
    found: List[QuadraticSurd] = []
    rest = factor
    remaining = list(approx)

    for z in list(remaining):
        if abs(z.imag) > 1e-6 * (1 + abs(z)):
            continue
        q = _snap(z.real)
        if len(rest) > 1 and upoly.evaluate(rest, q) == 0:
            rest = upoly.exact_quotient(rest, [Fraction(1), -q])
            found.append(QuadraticSurd(q))
            remaining.remove(z)

    i = 0
    while i < len(remaining) and len(rest) > 2:
        z = remaining[i]
        partner = None
        for j in range(i + 1, len(remaining)):
            w = remaining[j]
            s, p = _snap((z + w).real), _snap((z * w).real)
            if abs((z + w).imag) > 1e-6 or abs((z * w).imag) > 1e-6 * (1 + abs(z * w)):
                continue
            quadratic = [Fraction(1), -s, p]
            quot, rem = upoly.divmod_(rest, quadratic)
            if not rem:
                partner = j
                rest = quot
                half = s / 2
                k, d = _surd(half * half - p)
                found.extend([QuadraticSurd(half, -k, d), QuadraticSurd(half, k, d)])
                break
        if partner is None:
            i += 1
        else:
            del remaining[partner]
            del remaining[i]
    return found, rest


def solve_rational(coefficients: Sequence[Fraction]) -> List[Root]:
    """All roots with exact multiplicities and exact closed forms where they exist."""
    p = upoly.trim(coefficients)
    if len(p) <= 1:
        return []
    roots: List[Root] = []
    for factor, multiplicity in upoly.squarefree_decomposition(p):
        approx = solve_simple([complex(c) for c in factor])
        exact, rest = _exact_roots(factor, approx)
        for surd in exact:
            roots.append(Root(surd.to_complex(), multiplicity, surd))
        if len(rest) > 1:
            for z in solve_simple([complex(c) for c in rest]):
                roots.append(Root(complex(z), multiplicity))
    roots.sort(key=lambda r: (round(r.value.real, 9), round(r.value.imag, 9)))
    logger.debug("roots found", degree=len(p) - 1, distinct=len(roots),
                 exact=sum(1 for r in roots if r.exact is not None))
    return roots


def cluster_roots(values: Sequence[complex], threshold: Optional[float] = None) -> List[Root]:
    """Group float roots closer than ``threshold * (1 + |E|)``; used for float-only input."""
    threshold = get_settings().cluster_threshold if threshold is None else threshold
    clusters: List[List[complex]] = []
    for z in sorted(values, key=lambda v: (v.real, v.imag)):
        for group in clusters:
            centre = sum(group) / len(group)
            if abs(z - centre) <= threshold * (1 + abs(centre)):
                group.append(z)
                break
        else:
            clusters.append([z])
    return [Root(complex(sum(g) / len(g)), len(g)) for g in clusters]


def numeric_roots(coefficients: Sequence[Fraction]) -> List[complex]:
    """Roots repeated by multiplicity."""
    out: List[complex] = []
    for root in solve_rational(coefficients):
        out.extend([root.value] * root.multiplicity)
    return out


def residual_ok(coefficients: Sequence[Fraction], roots: Sequence[complex], tolerance: float = 1e-12) -> bool:
    """``|p(E)| <= tolerance * ||p||`` at every root (coefficient 2-norm)."""
    c = np.array([float(x) for x in coefficients])
    norm = float(np.linalg.norm(c))
    scale = [max(1.0, abs(z)) ** (len(c) - 1) for z in roots]
    return all(abs(np.polyval(c, z)) <= tolerance * norm * s for z, s in zip(roots, scale))
