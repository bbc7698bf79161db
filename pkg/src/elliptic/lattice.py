"""Period lattices: basis reduction, argument reduction and modular invariants."""

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from src.core.config import get_settings
from src.core.constants import POLE_EXCLUSION
from src.core.exceptions import PoleProximityError


def _gauss_reduce(a: complex, b: complex) -> Tuple[complex, complex]:
    """Reduced basis of the lattice ``Z a + Z b`` with ``Im(b/a) > 0``."""
    if abs(b) < abs(a):
        a, b = b, a
    while True:
        b = b - round((b / a).real) * a
        if abs(b) >= abs(a):
            break
        a, b = b, a
    if (b / a).imag < 0:
        b = -b
    return a, b


def _divisor_power_sum(n: int, k: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


@dataclass
class Lattice:
    """Lattice ``2 omega1 Z + 2 omega2 Z``.

    Series are evaluated in a Gauss-reduced basis so that the nome
    ``q = exp(i pi t)`` satisfies ``|q| <= exp(-pi sqrt(3) / 2)``.
    """

    omega1: complex
    omega2: complex
    terms: int = field(default_factory=lambda: get_settings().series_terms)
    pole_radius: Optional[float] = None

    def __post_init__(self):
        self.omega1 = complex(self.omega1)
        self.omega2 = complex(self.omega2)
        if abs((self.omega2 / self.omega1).imag) < 1e-14:
            raise ValueError("half-periods must be linearly independent over the reals")
        p1, p2 = _gauss_reduce(2 * self.omega1, 2 * self.omega2)
        self.period_a = p1
        self.period_b = p2
        self.w1 = p1 / 2
        self.modulus = p2 / p1
        self.nome = cmath.exp(1j * math.pi * self.modulus)
        self._theta = [(-1) ** n * cmath.exp(1j * math.pi * self.modulus * n * (n + 1)) for n in range(self.terms + 1)]
        q2 = self.nome**2
        self._lambert = [n * q2**n / (1 - q2**n) for n in range(1, self.terms + 1)]
        self.g2, self.g3 = self._invariants()
        self.eta1 = self._eta1()

    # ------------------------------------------------------------------

    @property
    def min_period(self) -> float:
        return abs(self.period_a)

    @property
    def discriminant(self) -> complex:
        return self.g2**3 - 27 * self.g3**2

    def is_rectangular(self) -> bool:
        r1, r2 = self.omega1, self.omega2
        return (abs(r1.imag) < 1e-14 * abs(r1) and abs(r2.real) < 1e-14 * abs(r2)) or (
            abs(r1.real) < 1e-14 * abs(r1) and abs(r2.imag) < 1e-14 * abs(r2)
        )

    def half_period(self, index: int) -> complex:
        """``omega1``, ``omega2`` or ``omega1 + omega2`` for index 1, 2, 3."""
        return {1: self.omega1, 2: self.omega2, 3: self.omega1 + self.omega2}[index]

    def coordinates(self, z: complex) -> Tuple[float, float]:
        """Real ``(s, t)`` with ``z = s * period_a + t * period_b``."""
        a, b = self.period_a, self.period_b
        s = (z * b.conjugate()).imag / (a * b.conjugate()).imag
        t = (z * a.conjugate()).imag / (b * a.conjugate()).imag
        return s, t

    def reduce(self, z: complex) -> complex:
        """Representative of ``z`` closest to the origin."""
        s, t = self.coordinates(z)
        base = z - round(s) * self.period_a - round(t) * self.period_b
        best = base
        for i in (-1, 0, 1):
            for j in (-1, 0, 1):
                cand = base - i * self.period_a - j * self.period_b
                if abs(cand) < abs(best):
                    best = cand
        return best

    @property
    def exclusion_radius(self) -> float:
        return POLE_EXCLUSION * self.min_period if self.pole_radius is None else self.pole_radius

    def check_pole(self, z: complex) -> complex:
        reduced = self.reduce(z)
        if abs(reduced) < self.exclusion_radius:
            raise PoleProximityError(f"{z} lies within {abs(reduced):.3g} of a lattice point")
        return reduced

    # ------------------------------------------------------------------

    def _invariants(self) -> Tuple[complex, complex]:
        q2 = self.nome**2
        e4 = 1 + 240 * sum(_divisor_power_sum(n, 3) * q2**n for n in range(1, self.terms + 1))
        e6 = 1 - 504 * sum(_divisor_power_sum(n, 5) * q2**n for n in range(1, self.terms + 1))
        scale = math.pi / self.w1
        return scale**4 * e4 / 12, scale**6 * e6 / 216

    def theta_weights(self):
        """``(-1)^n q^(n(n+1))`` for n = 0..terms.

        The common factor ``q^(1/4)`` of the θ₁ series is dropped; it cancels in
        every ratio taken here and underflows on stretched lattices.
        """
        return self._theta

    def lambert_weights(self):
        """``n q^2n / (1 - q^2n)`` for n = 1..terms."""
        return self._lambert

    def _eta1(self) -> complex:
        """``zeta(w1)`` for the reduced half-period ``w1``."""
        weights = self.theta_weights()
        num = sum(w * (2 * n + 1) ** 3 for n, w in enumerate(weights))
        den = sum(w * (2 * n + 1) for n, w in enumerate(weights))
        return math.pi**2 / (12 * self.w1) * num / den
