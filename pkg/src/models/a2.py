"""A2 elliptic Calogero-Moser model in the algebraic variables (x, y) and (u, v)."""

from fractions import Fraction
from functools import lru_cache
from typing import Dict

from src.algebra.mpoly import MPoly, variables
from src.algebra.ratfn import Base, FactoredRatFn
from src.operators.diffop import Chart, DiffOp, compose
from src.operators.parity import even_to_uv, restrict_to_even

x, y, u, v, tau, mu, nu, lam = variables("x", "y", "u", "v", "tau", "mu", "nu", "lam")

F = Fraction
XY = Chart.XY
UV = Chart.UV


def twelve_D() -> MPoly:
    """``12 D(x, y)``, the determinant of the contravariant metric times 12."""
    return (
        9 * mu**2 * x**4 * y**2
        + 54 * tau * mu**2 * x**2 * y**4
        + 27 * mu**2 * (3 * tau**2 - 4 * mu) * y**6
        - 12 * mu * x**5
        - 72 * tau * mu * x**3 * y**2
        - 108 * mu * (tau**2 - 2 * mu) * x * y**4
        - 12 * tau * x**4
        - 18 * (4 * tau**2 + 5 * mu) * x**2 * y**2
        - 54 * tau * (2 * tau**2 - 3 * mu) * y**4
        - 4 * x**3
        - 108 * tau * x * y**2
        - 27 * y**2
    )


D = twelve_D() * F(1, 12)
D_XY = Base("D_xy", D)
D_UV = Base("D_uv", even_to_uv(D))
Y_BASE = Base("y", y)

# UV counterparts of XY denominator bases
UV_BASE_MAP = {"D_xy": D_UV}

# Numerator of the rational potential
N = x + 2 * tau * x**2 + mu * x**3 - 6 * (mu - tau**2) * y**2 + 3 * mu * tau * x * y**2
X_LIN = 2 * x - 3 * mu * y**2


def E0() -> MPoly:
    """Ground-state shift ``3 nu (3 nu + 1) tau``."""
    return 3 * nu * (3 * nu + 1) * tau


def potential() -> FactoredRatFn:
    """``V = (3 nu (nu - 1) / 4) N^2 / D``."""
    return FactoredRatFn.over(F(3, 4) * nu * (nu - 1) * N**2, D_XY)


def laplace_beltrami() -> DiffOp:
    """Laplace-Beltrami operator of the flat metric in (x, y)."""
    return DiffOp(XY, {
        (2, 0): 3 * (x * F(1, 3) + tau * x**2 + mu * x**3 + (mu - tau**2) * y**2
                     - mu * tau * x * y**2 - mu**2 * x**2 * y**2),
        (1, 1): y * (3 + 8 * tau * x + 7 * mu * x**2 - 3 * mu * tau * y**2 - 6 * mu**2 * x * y**2),
        (0, 2): -F(1, 3) * x**2 + 3 * tau * y**2 + 4 * mu * x * y**2 - 3 * mu**2 * y**4,
        (1, 0): 1 + 4 * tau * x + 5 * mu * x**2 - 3 * mu * tau * y**2 - 6 * mu**2 * x * y**2,
        (0, 1): 2 * y * (2 * tau + 3 * mu * x - 3 * mu**2 * y**2),
    })


def h_xy() -> DiffOp:
    """Gauge-rotated Hamiltonian as an algebraic operator in (x, y)."""
    c = 1 + 3 * nu
    return DiffOp(XY, {
        (2, 0): x + 3 * tau * x**2 + 3 * mu * x**3 + 3 * (mu - tau**2) * y**2
                - 3 * mu * tau * x * y**2 - 3 * mu**2 * x**2 * y**2,
        (1, 1): y * (3 + 8 * tau * x + 7 * mu * x**2 - 3 * mu * tau * y**2 - 6 * mu**2 * x * y**2),
        (0, 2): F(1, 3) * (-x**2 + 9 * tau * y**2 + 12 * mu * x * y**2 - 9 * mu**2 * y**4),
        (1, 0): c * (1 + 4 * tau * x + 5 * mu * x**2 - 3 * mu * tau * y**2 - 6 * mu**2 * x * y**2),
        (0, 1): 2 * c * y * (2 * tau + 3 * mu * x - 3 * mu**2 * y**2),
        (0, 0): 3 * nu * c * mu * (2 * x - 3 * mu * y**2),
    })


def h_uv() -> DiffOp:
    """The same operator written directly in u = x, v = y^2."""
    return DiffOp(UV, {
        (2, 0): u + 3 * tau * u**2 + 3 * mu * u**3 + 3 * (mu - tau**2) * v
                - 3 * mu * tau * u * v - 3 * mu**2 * u**2 * v,
        (1, 1): 2 * v * (3 + 8 * tau * u + 7 * mu * u**2 - 3 * mu * tau * v - 6 * mu**2 * u * v),
        (0, 2): 4 * v * (-F(1, 3) * u**2 + 3 * tau * v + 4 * mu * u * v - 3 * mu**2 * v**2),
        (1, 0): (1 + 3 * nu) * (1 + 4 * tau * u + 5 * mu * u**2 - 3 * mu * tau * v - 6 * mu**2 * u * v),
        (0, 1): 2 * (-F(1, 3) * u**2 + tau * (7 + 12 * nu) * v + 2 * mu * (5 + 9 * nu) * u * v
                     - 9 * mu**2 * (1 + 2 * nu) * v**2),
        (0, 0): 3 * nu * (1 + 3 * nu) * mu * (2 * u - 3 * mu * v),
    })


def k_xy_zero_order() -> MPoly:
    """Zero-order coefficient of ``k_xy``; its sign is the one for which [h, k] = 0."""
    return 2 * nu * (1 + 3 * nu) * (2 + 3 * nu) * mu * y * (2 * tau + 3 * mu * x - 3 * mu**2 * y**2)


def k_xy() -> DiffOp:
    """Third-order integral commuting with ``h_xy``."""
    a = 1 + 3 * nu
    b = 2 + 3 * nu
    return DiffOp(XY, {
        (0, 0): k_xy_zero_order(),
        (1, 0): F(1, 3) * a * b * y * (mu + 8 * tau**2 + 28 * mu * tau * x + 21 * mu**2 * x**2
                                      - 9 * mu**2 * tau * y**2 - 18 * mu**3 * x * y**2),
        (0, 1): -F(2, 9) * a * b * (1 + 4 * tau * x + 6 * mu * x**2 - 24 * mu * tau * y**2
                                   - 36 * mu**2 * x * y**2 + 27 * mu**3 * y**4),
        (2, 0): b * y * (3 * tau + 4 * (2 * tau**2 + mu) * x + 17 * mu * tau * x**2 + 8 * mu**2 * x**3
                         + 3 * mu * (tau**2 - 2 * mu) * y**2 - 6 * mu**2 * tau * x * y**2
                         - 6 * mu**3 * x**2 * y**2),
        (1, 1): -F(2, 3) * b * (x + 4 * tau * x**2 + 5 * mu * x**3 + 3 * (mu - 4 * tau**2) * y**2
                                - 27 * mu**2 * x**2 * y**2 - 33 * mu * tau * x * y**2
                                + 9 * mu**2 * tau * y**4 + 18 * mu**3 * x * y**4),
        (0, 2): -b * y * (1 + F(8, 3) * tau * x + 3 * mu * x**2 - 7 * mu * tau * y**2
                          - 10 * mu**2 * x * y**2 + 6 * mu**3 * y**4),
        (3, 0): y * (1 + 5 * tau * x + 2 * (2 * mu + 3 * tau**2) * x**2 + 3 * mu * (tau**2 - 2 * mu) * x * y**2
                     + 9 * mu * tau * x**3 - tau * (3 * mu - 2 * tau**2) * y**2 + 3 * mu**2 * x**4
                     - 3 * mu**2 * tau * x**2 * y**2 - 2 * mu**3 * x**3 * y**2),
        (2, 1): (-F(2, 3) * x**2 + 2 * (5 * tau**2 + mu) * x * y**2 - 2 * tau * x**3 + 3 * tau * y**2
                 - 2 * mu * x**4 + 3 * mu * (tau**2 - 2 * mu) * y**4 + 19 * mu * tau * x**2 * y**2
                 - 6 * mu**3 * x**2 * y**4 + 10 * mu**2 * x**3 * y**2 - 6 * mu**2 * tau * x * y**4),
        (1, 2): -y * (x + F(10, 3) * tau * x**2 + F(11, 3) * mu * x**3 - 13 * mu * tau * x * y**2
                      + 3 * (mu - 2 * tau**2) * y**2 - 11 * mu**2 * x**2 * y**2
                      + 3 * mu**2 * tau * y**4 + 6 * mu**3 * x * y**4),
        (0, 3): -(y**2 + F(2, 27) * x**3 + 2 * tau * x * y**2 - 3 * mu * tau * y**4
                  + F(5, 3) * mu * x**2 * y**2 - 4 * mu**2 * x * y**4 + 2 * mu**3 * y**6),
    })


@lru_cache(maxsize=None)
def ksq_uv() -> DiffOp:
    """``k o k`` restricted to the even sector and written in (u, v)."""
    k = k_xy()
    return restrict_to_even(compose(k, k), UV_BASE_MAP)


@lru_cache(maxsize=None)
def _sl3_generators() -> Dict[str, DiffOp]:
    euler = {(1, 0): x, (0, 1): y, (0, 0): 3 * nu}
    return {
        "J1": DiffOp(XY, {(1, 0): 1}),
        "J2": DiffOp(XY, {(0, 1): 1}),
        "J3": DiffOp(XY, {(1, 0): x}),
        "J4": DiffOp(XY, {(1, 0): y}),
        "J5": DiffOp(XY, {(0, 1): x}),
        "J6": DiffOp(XY, {(0, 1): y}),
        "J7": DiffOp(XY, {k: x * c for k, c in euler.items()}),
        "J8": DiffOp(XY, {k: y * c for k, c in euler.items()}),
    }


def sl3_generator(i: int) -> DiffOp:
    """First-order sl(3) generator ``J_i``, i = 1..8, in the (-3 nu, 0) representation."""
    return _sl3_generators()[f"J{i}"]


def sl3_generators() -> Dict[str, DiffOp]:
    return dict(_sl3_generators())


def euler_cartan_xy(n: int) -> DiffOp:
    """``J0(n) = x d_x + y d_y - n``."""
    return DiffOp(XY, {(1, 0): x, (0, 1): y, (0, 0): -n})


def ipar_xy(n: int) -> DiffOp:
    """Particular integral ``prod_{j=0}^{n} (J0(n) + j)``."""
    result = DiffOp.identity(XY)
    for j in range(n + 1):
        result = compose(result, euler_cartan_xy(n) + j)
    return result


def coupling_a2(n: int) -> Fraction:
    """QES coupling ``kappa = n (n + 3) / 9``."""
    return F(n * (n + 3), 9)


def nu_for(n: int) -> Fraction:
    """Coupling parameter ``nu = -n/3`` at which P_n is invariant."""
    return F(-n, 3)
