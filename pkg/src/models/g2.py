"""G2 elliptic model in the Weyl-invariant variables (u, v) and its g(2) hidden algebra."""

from fractions import Fraction
from typing import Dict, Tuple, Union

from src.algebra.mpoly import MPoly
from src.algebra.ratfn import Base, FactoredRatFn
from src.core.exceptions import UnknownGeneratorError
from src.models.a2 import D_UV, h_uv, mu, nu, lam, tau, u, v
from src.operators.diffop import Chart, DiffOp, compose

F = Fraction
UV = Chart.UV

V_BASE = Base("v", v)

# Numerator of the long-root potential, N(x, y) with u = x, v = y^2
N_UV = u + 2 * tau * u**2 + mu * u**3 - 6 * mu * v + 6 * tau**2 * v + 3 * mu * tau * u * v

G2_GENERATORS = ("J0", "J1", "J2", "J3", "J4", "R0", "R1", "R2", "T0", "T1", "T2")

Spin = Union[MPoly, int, Fraction]


def h_m() -> DiffOp:
    """First-order G2 correction added to h(u, v) with weight lambda."""
    return DiffOp(UV, {
        (1, 0): 6 * (1 + 2 * tau * u + mu * u**2),
        (0, 1): 4 * (-u**2 + 3 * tau * v + 3 * mu * u * v),
        (0, 0): 18 * nu * mu * u,
    })


def h_g2() -> DiffOp:
    """``h_G2 = h(u, v) + lambda h_m``."""
    return h_uv() + h_m().times(lam)


def euler_cartan_uv(n: Spin) -> DiffOp:
    """``J0(n) = u d_u + 2 v d_v - n``."""
    return DiffOp(UV, {(1, 0): u, (0, 1): 2 * v, (0, 0): -MPoly.lift(n)})


def g2_generator(name: str, n: Spin) -> DiffOp:
    """Generator of the eleven-dimensional algebra g(2) at spin ``n``."""
    n = MPoly.lift(n)
    third = n * F(1, 3)
    j0 = euler_cartan_uv(n)
    if name == "J0":
        return j0
    if name == "J1":
        return DiffOp(UV, {(1, 0): 1})
    if name == "J2":
        return DiffOp(UV, {(1, 0): u, (0, 0): -third})
    if name == "J3":
        return DiffOp(UV, {(0, 1): 2 * v, (0, 0): -third})
    if name == "J4":
        return j0.times(u)
    if name == "R0":
        return DiffOp(UV, {(0, 1): 1})
    if name == "R1":
        return DiffOp(UV, {(0, 1): u})
    if name == "R2":
        return DiffOp(UV, {(0, 1): u**2})
    if name == "T0":
        return DiffOp(UV, {(2, 0): v})
    if name == "T1":
        return compose(DiffOp(UV, {(1, 0): v}), j0)
    if name == "T2":
        return compose(j0.times(v), j0 + 1)
    raise UnknownGeneratorError(f"{name} is not a g(2) generator (expected one of {G2_GENERATORS})")


def g2_generators(n: Spin) -> Dict[str, DiffOp]:
    return {name: g2_generator(name, n) for name in G2_GENERATORS}


def ipar_uv(n: int) -> DiffOp:
    """Particular integral ``prod_{j=0}^{n} (J0(n) + j)`` of the G2 model."""
    result = DiffOp.identity(UV)
    for j in range(n + 1):
        result = compose(result, euler_cartan_uv(n) + j)
    return result


def g2_shift() -> MPoly:
    """Constant added before the Schroedinger gauge: ``3 nu (3 nu + 6 lambda + 1) tau``."""
    return 3 * nu * (3 * nu + 6 * lam + 1) * tau


def gauge_factors() -> Tuple[Tuple[Base, MPoly], ...]:
    """``p = v^(3 lambda / 2) * D~^((nu - lambda) / 2)`` as (base, exponent) pairs."""
    return ((V_BASE, lam * F(3, 2)), (D_UV, (nu - lam) * F(1, 2)))


def g2_couplings(nu_value: Spin, lam_value: Spin) -> Tuple[MPoly, MPoly]:
    """``(kappa, kappa_2) = ((nu - lambda)(nu - lambda - 1), lambda (3 lambda - 1))``."""
    n_ = MPoly.lift(nu_value)
    l_ = MPoly.lift(lam_value)
    return (n_ - l_) * (n_ - l_ - 1), l_ * (3 * l_ - 1)


def coupling_g2_a2(n: int) -> Fraction:
    """A2 coupling reached by the G2 family at lambda = 1/3: ``(n + 1)(n + 4) / 9``."""
    return F((n + 1) * (n + 4), 9)


def short_root_potential() -> FactoredRatFn:
    """``u^2 / v``."""
    return FactoredRatFn.over(u**2, V_BASE)


def long_root_potential() -> FactoredRatFn:
    """``N^2 / D~``."""
    return FactoredRatFn.over(N_UV**2, D_UV)
