"""Elliptic contexts: a lattice together with the half-period fixing τ and μ."""

import math
from dataclasses import dataclass
from typing import List, Optional

from structlog import get_logger

from src.core.config import LatticeConfig
from src.core.constants import DEGENERATE_PERIOD_RATIO, POLE_EXCLUSION
from src.core.exceptions import ConfigError
from src.elliptic.lattice import Lattice
from src.elliptic.weierstrass import wp

logger = get_logger()


def _polish_root(e: complex, g2: complex, g3: complex, steps: int = 3) -> complex:
    for _ in range(steps):
        f = 4 * e**3 - g2 * e - g3
        df = 12 * e**2 - g2
        if df == 0:
            break
        e -= f / df
    return e


@dataclass
class EllipticContext:
    """Lattice, roots ``e_i = ℘(ω_i)`` and the couplings ``τ = -℘(ω)``, ``μ = τ² - g₂/12``."""

    lattice: Lattice
    index: int
    omega: complex
    roots: List[complex]
    tau: complex
    mu: complex

    @property
    def g2(self) -> complex:
        return self.lattice.g2

    @property
    def g3(self) -> complex:
        return self.lattice.g3

    @property
    def min_period(self) -> float:
        return self.lattice.min_period

    def invariant_residuals(self) -> dict:
        """Relative residuals of ``g₂ = 12(τ²-μ)`` and ``g₃ = 4τ(2τ²-3μ)``."""
        tau, mu = self.tau, self.mu
        scale2 = 1 + abs(self.g2)
        scale3 = 1 + abs(self.g3)
        return {
            "g2": abs(self.g2 - 12 * (tau**2 - mu)) / scale2,
            "g3": abs(self.g3 - 4 * tau * (2 * tau**2 - 3 * mu)) / scale3,
            "roots_sum": abs(sum(self.roots)) / (1 + max(abs(e) for e in self.roots)),
        }

    @classmethod
    def from_half_periods(cls, omega1: complex, omega2: complex,
                          half_period_index: Optional[int] = None,
                          pole_radius: Optional[float] = None) -> "EllipticContext":
        lattice = Lattice(omega1, omega2, pole_radius=pole_radius)
        roots = [_polish_root(wp(lattice.half_period(i), lattice), lattice.g2, lattice.g3) for i in (1, 2, 3)]
        if half_period_index is None:
            if lattice.is_rectangular():
                half_period_index = 1 + min(range(3), key=lambda i: (abs(roots[i]), i))
            else:
                half_period_index = 1
        tau = -roots[half_period_index - 1]
        mu = tau**2 - lattice.g2 / 12
        ctx = cls(lattice, half_period_index, lattice.half_period(half_period_index), roots, tau, mu)
        logger.debug("elliptic context", index=half_period_index, tau=repr(tau), mu=repr(mu),
                     discriminant=repr(lattice.discriminant))
        return ctx

    @classmethod
    def from_config(cls, config: LatticeConfig) -> "EllipticContext":
        try:
            return cls.from_half_periods(config.omega1_complex, config.omega2_complex, config.half_period_index)
        except ValueError as e:
            raise ConfigError(str(e)) from e

    @classmethod
    def rational_limit(cls, scale: float = 1.0) -> "EllipticContext":
        """Both periods large: ``τ, μ -> 0`` and ℘ close to ``1/z²``."""
        big = DEGENERATE_PERIOD_RATIO * scale
        return cls.from_half_periods(big, 1j * big, half_period_index=1, pole_radius=POLE_EXCLUSION * scale)

    @classmethod
    def trigonometric(cls, alpha: float, case: str) -> "EllipticContext":
        """Real period ``2π/α`` with the imaginary one stretched.

        Case ``"I"`` picks the half-period with ``℘(ω) -> -α²/12`` (``τ = α²/12``, ``μ -> 0``);
        case ``"II"`` picks ``ω₁`` with ``℘(ω₁) -> α²/6`` (``τ = -α²/6``).
        """
        omega1 = math.pi / alpha
        omega2 = 1j * DEGENERATE_PERIOD_RATIO * omega1
        if case == "I":
            return cls.from_half_periods(omega1, omega2, half_period_index=2)
        if case == "II":
            return cls.from_half_periods(omega1, omega2, half_period_index=1)
        raise ConfigError(f"unknown trigonometric case {case!r}")
