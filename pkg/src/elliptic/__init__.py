"""Weierstrass functions, the elliptic change of variables and numeric cross-checks."""

from src.elliptic.checks import NumericCheckReport, numeric_check, run_checks, sample_points
from src.elliptic.context import EllipticContext
from src.elliptic.coordinates import EllipticPoint, jacobian, map_xy
from src.elliptic.lattice import Lattice
from src.elliptic.weierstrass import sigma, sigma1, wp, wp_prime, zeta

__all__ = [
    "EllipticContext",
    "EllipticPoint",
    "Lattice",
    "NumericCheckReport",
    "jacobian",
    "map_xy",
    "numeric_check",
    "run_checks",
    "sample_points",
    "sigma",
    "sigma1",
    "wp",
    "wp_prime",
    "zeta",
]
