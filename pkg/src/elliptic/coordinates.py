"""The elliptic change of variables (y1, y2) -> (x, y) and numeric derivatives."""

import cmath
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from src.core.config import get_settings
from src.core.exceptions import DegenerateDenominatorError, PoleProximityError
from src.elliptic.context import EllipticContext
from src.elliptic.weierstrass import wp_pair
from src.models import a2

# |f(y1) f'(y2) - f(y2) f'(y1)| below this is treated as degenerate
DENOMINATOR_FLOOR = 1e-8

_TWELVE_D = a2.twelve_D()


@dataclass(frozen=True)
class EllipticPoint:
    """Reduced coordinates; ``y3 = -y1 - y2``."""

    y1: complex
    y2: complex

    @property
    def y3(self) -> complex:
        return -self.y1 - self.y2

    def pair_arguments(self) -> Tuple[complex, complex, complex]:
        """Arguments of ℘ in the potential: ``y1 - y2``, ``2y1 + y2``, ``y1 + 2y2``."""
        return self.y1 - self.y2, 2 * self.y1 + self.y2, self.y1 + 2 * self.y2

    def guarded_arguments(self) -> Tuple[complex, ...]:
        return self.pair_arguments() + (self.y1, self.y2, self.y1 + self.y2)

    def shifted(self, d1: complex = 0, d2: complex = 0) -> "EllipticPoint":
        return EllipticPoint(self.y1 + d1, self.y2 + d2)

    def negated(self) -> "EllipticPoint":
        return EllipticPoint(-self.y1, -self.y2)

    def swapped(self) -> "EllipticPoint":
        return EllipticPoint(self.y2, self.y1)


def is_admissible(pt: EllipticPoint, ctx: EllipticContext, margin: float = 0.0) -> bool:
    """No guarded argument within the pole-exclusion radius, widened by ``margin``, of a lattice point.

    A finite-difference stencil of half-width ``h`` around ``pt`` moves the
    guarded arguments by at most ``3 h``; callers pass that as ``margin``.
    """
    radius = ctx.lattice.exclusion_radius + margin
    try:
        for z in pt.guarded_arguments():
            if abs(ctx.lattice.check_pole(z)) < radius:
                return False
    except PoleProximityError:
        return False
    return True


def map_xy(pt: EllipticPoint, ctx: EllipticContext, check_parity: bool = False) -> Tuple[complex, complex]:
    """``x = (f'1 - f'2) / den``, ``y = 2 (f1 - f2) / den`` with ``f = ℘ + τ``."""
    p1, dp1 = wp_pair(pt.y1, ctx.lattice)
    p2, dp2 = wp_pair(pt.y2, ctx.lattice)
    f1, f2 = p1 + ctx.tau, p2 + ctx.tau
    den = f1 * dp2 - f2 * dp1
    if abs(den) < DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(f"denominator {abs(den):.3g} at ({pt.y1}, {pt.y2})")
    x, y = (dp1 - dp2) / den, 2 * (f1 - f2) / den
    if check_parity:
        xr, yr = map_xy(pt.negated(), ctx)
        scale = 1 + abs(x) + abs(y)
        if abs(xr - x) > 1e-10 * scale or abs(yr + y) > 1e-10 * scale:
            raise AssertionError(f"parity violated at ({pt.y1}, {pt.y2})")
    return x, y


def discriminant(x: complex, y: complex, ctx: EllipticContext) -> complex:
    """``D(x, y)`` at the context couplings."""
    return _TWELVE_D.evaluate({"x": x, "y": y, "tau": ctx.tau, "mu": ctx.mu}) / 12


def potential_ratio(x: complex, y: complex, ctx: EllipticContext) -> complex:
    """``(3/4) N² / D``, the rational potential without its coupling."""
    n = a2.N.evaluate({"x": x, "y": y, "tau": ctx.tau, "mu": ctx.mu})
    return 0.75 * n * n / discriminant(x, y, ctx)


def pair_potential(pt: EllipticPoint, ctx: EllipticContext) -> complex:
    """``℘(y1 - y2) + ℘(2y1 + y2) + ℘(y1 + 2y2)``."""
    return sum(wp_pair(z, ctx.lattice)[0] for z in pt.pair_arguments())


# ----------------------------------------------------------------------
# Finite differences
# ----------------------------------------------------------------------


def richardson(estimate: Callable[[float], complex], step: float, levels: int) -> complex:
    """Extrapolate an ``O(h²)`` estimate by repeated step halving."""
    table = [estimate(step / 2**k) for k in range(levels + 1)]
    for level in range(1, levels + 1):
        factor = 4**level
        table = [(factor * table[k + 1] - table[k]) / (factor - 1) for k in range(len(table) - 1)]
    return table[0]


def _step(ctx: EllipticContext, factor: float) -> float:
    return factor * ctx.min_period


def stencil_margin(ctx: EllipticContext, second_order: bool = False) -> float:
    """Distance a difference stencil around a point can move its guarded arguments."""
    settings = get_settings()
    factor = settings.fd_second_step_factor if second_order else settings.fd_step_factor
    # 2 y1 + y2 moves by 3 h along the diagonal; one extra h of slack
    return 4 * _step(ctx, factor)


def jacobian(pt: EllipticPoint, ctx: EllipticContext, step_factor: Optional[float] = None) -> complex:
    """``W = ∂(x, y) / ∂(y1, y2)`` by central differences of ``map_xy``."""
    settings = get_settings()
    h0 = _step(ctx, settings.fd_step_factor if step_factor is None else step_factor)
    levels = settings.richardson_levels

    def partial(direction: int) -> Callable[[float], np.ndarray]:
        def estimate(h: float) -> np.ndarray:
            d = (h, 0) if direction == 1 else (0, h)
            plus = np.array(map_xy(pt.shifted(*d), ctx))
            minus = np.array(map_xy(pt.shifted(-d[0], -d[1]), ctx))
            return (plus - minus) / (2 * h)
        return estimate

    dx1, dy1 = richardson(partial(1), h0, levels)
    dx2, dy2 = richardson(partial(2), h0, levels)
    return complex(dx1 * dy2 - dx2 * dy1)


def laplacian_a2(func: Callable[[EllipticPoint], complex], pt: EllipticPoint,
                 ctx: EllipticContext, step_factor: Optional[float] = None) -> complex:
    """``(1/3)(∂1² + ∂2² - ∂1∂2) func`` by central differences."""
    settings = get_settings()
    h0 = _step(ctx, settings.fd_second_step_factor if step_factor is None else step_factor)
    centre = func(pt)

    def second(d1: int, d2: int) -> Callable[[float], complex]:
        def estimate(h: float) -> complex:
            return (func(pt.shifted(d1 * h, d2 * h)) - 2 * centre + func(pt.shifted(-d1 * h, -d2 * h))) / (h * h)
        return estimate

    d11 = richardson(second(1, 0), h0, settings.richardson_levels)
    d22 = richardson(second(0, 1), h0, settings.richardson_levels)
    # along (1, 1): d11 + 2 d12 + d22
    diag = richardson(second(1, 1), h0, settings.richardson_levels)
    d12 = (diag - d11 - d22) / 2
    return (d11 + d22 - d12) / 3


# ----------------------------------------------------------------------
# Reference forms in the degenerate limits
# ----------------------------------------------------------------------


def rational_xy(pt: EllipticPoint) -> Tuple[complex, complex]:
    """``x = -(y1² + y2² + y1 y2)``, ``y = -y1 y2 (y1 + y2)``."""
    y1, y2 = pt.y1, pt.y2
    return -(y1 * y1 + y2 * y2 + y1 * y2), -y1 * y2 * (y1 + y2)


def trigonometric_xy(pt: EllipticPoint, alpha: float) -> Tuple[complex, complex]:
    """Cosine and sine combinations reached at ``μ = 0``, ``τ = α²/12``."""
    a1, a2_ = alpha * pt.y1, alpha * pt.y2
    x = (cmath.cos(a1) + cmath.cos(a2_) + cmath.cos(a1 + a2_) - 3) / alpha**2
    y = 2 * (cmath.sin(a1) + cmath.sin(a2_) - cmath.sin(a1 + a2_)) / alpha**3
    return x, y


def trigonometric_jacobian(pt: EllipticPoint, alpha: float, case: str) -> complex:
    """Product of half-angle sines; case ``"II"`` divides by the cube of half-angle cosines."""
    half = alpha / 2
    y1, y2 = pt.y1, pt.y2
    w = 8 / alpha**3 * cmath.sin(half * (y1 - y2)) * cmath.sin(half * (y1 + 2 * y2)) * cmath.sin(half * (2 * y1 + y2))
    if case == "II":
        w /= (cmath.cos(half * y1) * cmath.cos(half * y2) * cmath.cos(half * (y1 + y2))) ** 3
    return w


def linear_system_coordinates(pt: EllipticPoint, ctx: EllipticContext) -> Tuple[complex, complex]:
    """Solve ``[[℘(y1), ℘'(y1)], [℘(y2), ℘'(y2)]] u = (1, 1)``."""
    p1, dp1 = wp_pair(pt.y1, ctx.lattice)
    p2, dp2 = wp_pair(pt.y2, ctx.lattice)
    u = np.linalg.solve(np.array([[p1, dp1], [p2, dp2]], dtype=complex), np.ones(2, dtype=complex))
    return complex(u[0]), complex(u[1])
