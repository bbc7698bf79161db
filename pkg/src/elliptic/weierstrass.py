"""Weierstrass ℘, ℘′, ζ, σ and σ₁ at double precision.

Everything is expanded in the Gauss-reduced basis of the lattice: ℘ and ℘′
by their Fourier series in ``v = πz / (2 w1)``, ζ and σ by the Jacobi θ₁
series. Both converge geometrically once ``z`` is reduced to the
fundamental cell.
"""

import cmath
import math
from typing import Tuple

from src.elliptic.lattice import Lattice

# |Im v| beyond which csc(v) is below double precision
_FLAT = 300.0


def wp_pair(z: complex, lattice: Lattice) -> Tuple[complex, complex]:
    """``(℘(z), ℘′(z))``; raises PoleProximityError near lattice points.

    ``℘(z) = -η₁/w₁ + k² [csc² v - 8 Σ n q^2n / (1 - q^2n) cos 2nv]`` with
    ``k = π / (2 w₁)``.
    """
    w = lattice.check_pole(z)
    k = math.pi / (2 * lattice.w1)
    v = k * w
    if abs(v.imag) > _FLAT:
        p = dp = 0j
    else:
        s = cmath.sin(v)
        p = 1 / (s * s)
        dp = -2 * cmath.cos(v) / (s * s * s)
    for n, a in enumerate(lattice.lambert_weights(), start=1):
        if a == 0:
            break
        p -= 8 * a * cmath.cos(2 * n * v)
        dp += 16 * n * a * cmath.sin(2 * n * v)
    return -lattice.eta1 / lattice.w1 + k * k * p, k**3 * dp


def wp(z: complex, lattice: Lattice) -> complex:
    return wp_pair(z, lattice)[0]


def wp_prime(z: complex, lattice: Lattice) -> complex:
    return wp_pair(z, lattice)[1]


def duplicate(p: complex, dp: complex, g2: complex) -> Tuple[complex, complex]:
    """``(℘(2z), ℘′(2z))`` from ``(℘(z), ℘′(z))``."""
    d2 = 6 * p * p - g2 / 2
    d3 = 12 * p * dp
    dp2 = dp * dp
    return (
        -2 * p + d2 * d2 / (4 * dp2),
        -dp + d2 * d3 / (4 * dp2) - d2**3 / (4 * dp2 * dp),
    )


def _theta1(v: complex, lattice: Lattice) -> Tuple[complex, complex]:
    """``(θ₁(v), θ₁′(v))`` up to the common factor dropped by ``theta_weights``."""
    value = 0j
    slope = 0j
    for n, weight in enumerate(lattice.theta_weights()):
        m = 2 * n + 1
        value += weight * cmath.sin(m * v)
        slope += weight * m * cmath.cos(m * v)
    return 2 * value, 2 * slope


def _theta1_prime_zero(lattice: Lattice) -> complex:
    return 2 * sum(w * (2 * n + 1) for n, w in enumerate(lattice.theta_weights()))


def sigma(z: complex, lattice: Lattice) -> complex:
    """Weierstrass σ; odd and entire, ``σ(z) ~ z`` at the origin."""
    w1 = lattice.w1
    v = math.pi * z / (2 * w1)
    theta, _ = _theta1(v, lattice)
    return (2 * w1 / math.pi) * cmath.exp(lattice.eta1 * z * z / (2 * w1)) * theta / _theta1_prime_zero(lattice)


def zeta(z: complex, lattice: Lattice) -> complex:
    """Weierstrass ζ = σ′/σ."""
    w1 = lattice.w1
    v = math.pi * z / (2 * w1)
    theta, slope = _theta1(v, lattice)
    return lattice.eta1 * z / w1 + (math.pi / (2 * w1)) * slope / theta


def sigma1(z: complex, omega: complex, lattice: Lattice) -> complex:
    """``σ(z + ω) / σ(ω) · exp(-ζ(ω) z)`` for a half-period ``ω``."""
    return sigma(z + omega, lattice) / sigma(omega, lattice) * cmath.exp(-zeta(omega, lattice) * z)
