"""Seeded numeric cross-checks of the identities that are not proved symbolically.

Every check draws pole-excluded points from a seeded generator, measures a
relative error per point and reports the maximum. Failures are entries in the
report; nothing here raises on a mismatch.
"""

import cmath
import math
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field
from structlog import get_logger

from src.core.config import LatticeConfig, get_settings
from src.core.constants import CHECK_IDS, CHECK_TOLERANCES, EXPLORATORY_CHECKS
from src.core.exceptions import ConfigError, DegenerateDenominatorError, NonConvergenceError, PoleProximityError
from src.elliptic.context import EllipticContext
from src.elliptic.coordinates import (
    EllipticPoint,
    discriminant,
    is_admissible,
    jacobian,
    laplacian_a2,
    linear_system_coordinates,
    map_xy,
    pair_potential,
    potential_ratio,
    rational_xy,
    stencil_margin,
    trigonometric_jacobian,
    trigonometric_xy,
)
from src.elliptic.weierstrass import duplicate, sigma, sigma1, wp_pair

logger = get_logger()

# Real parameter of the trigonometric limits
TRIG_ALPHA = 1.0

# Report at most this many failing samples
MAX_LISTED_FAILURES = 20


class NumericCheckReport(BaseModel):
    """Outcome of one numeric cross-check."""

    check: str
    samples: int
    tolerance: float
    max_error: float
    passed: bool
    exploratory: bool = False
    failures: List[Dict[str, Any]] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = self.model_dump(mode="json")
        if math.isinf(self.tolerance):
            data["tolerance"] = None
        return data


def _c(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


# ----------------------------------------------------------------------
# Sampling
# ----------------------------------------------------------------------


def sample_points(ctx: EllipticContext, count: int, rng: np.random.Generator, real: bool = False,
                  spread: float = 0.75, margin: Optional[float] = None) -> List[EllipticPoint]:
    """Points ``a * P + b * Q`` with ``a, b ~ U(-spread, spread)``.

    Points whose first-derivative stencil would reach the pole-exclusion
    disks are rejected; ``margin`` overrides that distance.

    ``P`` is the shortest period and ``Q`` the second reduced period clipped
    to the length of ``P`` (stretched lattices would otherwise sample far from
    the real axis). ``real=True`` keeps both coordinates on the ``P`` line.
    """
    lattice = ctx.lattice
    margin = stencil_margin(ctx) if margin is None else margin
    p = lattice.period_a
    q = lattice.period_b
    if abs(q) > abs(p):
        q = q * abs(p) / abs(q)
    points: List[EllipticPoint] = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 200 * count:
            raise NonConvergenceError(f"could only draw {len(points)} of {count} admissible points")
        a = rng.uniform(-spread, spread, size=2)
        if real:
            y1, y2 = a[0] * p, a[1] * p
        else:
            b = rng.uniform(-spread, spread, size=2)
            y1, y2 = a[0] * p + b[0] * q, a[1] * p + b[1] * q
        pt = EllipticPoint(complex(y1), complex(y2))
        if not is_admissible(pt, ctx, margin):
            continue
        try:
            map_xy(pt, ctx)
        except DegenerateDenominatorError:
            continue
        points.append(pt)
    return points


def _rational_points(count: int, rng: np.random.Generator, ctx: EllipticContext) -> List[EllipticPoint]:
    points: List[EllipticPoint] = []
    while len(points) < count:
        re = rng.uniform(-1, 1, size=2)
        im = rng.uniform(-1, 1, size=2)
        pt = EllipticPoint(complex(re[0], im[0]), complex(re[1], im[1]))
        if is_admissible(pt, ctx):
            points.append(pt)
    return points


# ----------------------------------------------------------------------
# Report assembly
# ----------------------------------------------------------------------


def _report(check: str, errors: List[float], tolerance: float, points: List[EllipticPoint],
            details: Optional[Dict[str, Any]] = None) -> NumericCheckReport:
    exploratory = check in EXPLORATORY_CHECKS
    failures = []
    if not exploratory:
        for i, (err, pt) in enumerate(zip(errors, points)):
            if not err <= tolerance:
                failures.append({"sample": i, "error": err, "y1": _c(pt.y1), "y2": _c(pt.y2)})
    max_error = max(errors) if errors else 0.0
    report = NumericCheckReport(
        check=check,
        samples=len(errors),
        tolerance=tolerance,
        max_error=float(max_error),
        passed=exploratory or not failures,
        exploratory=exploratory,
        failures=failures[:MAX_LISTED_FAILURES],
        details=details or {},
    )
    if failures:
        report.details["failure_count"] = len(failures)
    return report


def _constancy(values: List[complex]) -> Tuple[complex, List[float]]:
    """Mean and per-sample relative deviations of a quantity expected to be constant."""
    mean = complex(np.mean(np.array(values, dtype=complex)))
    return mean, [abs(v - mean) / max(abs(mean), 1e-300) for v in values]


# ----------------------------------------------------------------------
# Individual checks
# ----------------------------------------------------------------------


def check_wp_ode(ctx, points, tol):
    errors = []
    for pt in points:
        z = pt.y1
        p, dp = wp_pair(z, ctx.lattice)
        ode = abs(dp * dp - (4 * p**3 - ctx.g2 * p - ctx.g3)) / (1 + abs(p) ** 3)
        even = abs(wp_pair(-z, ctx.lattice)[0] - p) / (1 + abs(p))
        errors.append(max(ode, even))
    roots = max(abs(4 * e**3 - ctx.g2 * e - ctx.g3) / (1 + abs(e) ** 3) for e in ctx.roots)
    return _report("wp_ode", errors, tol, points, {"root_residual": roots, **ctx.invariant_residuals()})


def check_wp_duplication(ctx, points, tol):
    errors = []
    used = []
    for pt in points:
        try:
            direct = wp_pair(2 * pt.y1, ctx.lattice)[0]
        except PoleProximityError:
            continue
        doubled, _ = duplicate(*wp_pair(pt.y1, ctx.lattice), ctx.g2)
        errors.append(_rel(doubled, direct))
        used.append(pt)
    return _report("wp_duplication", errors, tol, used)


def check_sigma_quasi_periodicity(ctx, points, tol):
    lattice = ctx.lattice
    w1, eta1 = lattice.w1, lattice.eta1
    errors = []
    for pt in points:
        z = pt.y1
        shifted = sigma(z + 2 * w1, lattice)
        expected = -sigma(z, lattice) * cmath.exp(2 * eta1 * (z + w1))
        errors.append(_rel(shifted, expected))
    return _report("sigma_quasi_periodicity", errors, tol, points, {"eta1": _c(eta1)})


def check_jacobian_1d(ctx, points, tol):
    lattice, omega = ctx.lattice, ctx.omega
    errors = []
    for pt in points:
        y = pt.y1
        p, dp = wp_pair(y, lattice)
        s2 = sigma(2 * y, lattice)
        plain = _rel(s2 / sigma(y, lattice) ** 4, -dp)
        f = p + ctx.tau
        shifted = _rel(s2 / sigma1(y, omega, lattice) ** 4, -dp / (f * f))
        errors.append(max(plain, shifted))
    return _report("jacobian_1d", errors, tol, points)


def check_map_parity(ctx, points, tol):
    errors = []
    for pt in points:
        x, y = map_xy(pt, ctx)
        xn, yn = map_xy(pt.negated(), ctx)
        xs, ys = map_xy(pt.swapped(), ctx)
        scale = 1 + abs(x) + abs(y)
        errors.append(max(abs(xn - x), abs(yn + y), abs(xs - x), abs(ys - y)) / scale)
    return _report("map_parity", errors, tol, points)


def check_rational_limit(tol, count, rng):
    limit = EllipticContext.rational_limit()
    pts = _rational_points(count, rng, limit)
    errors = []
    for pt in pts:
        x, y = map_xy(pt, limit)
        xr, yr = rational_xy(pt)
        # the map gives y = +y1 y2 (y1 + y2)
        errors.append(max(_rel(x, xr), _rel(y, -yr)))
    details = {"tau": _c(limit.tau), "mu": _c(limit.mu), "y_orientation": "flipped"}
    return _report("rational_limit", errors, tol, pts, details)


def _potential_offset(ctx, points) -> complex:
    diffs = []
    for pt in points:
        x, y = map_xy(pt, ctx)
        diffs.append(potential_ratio(x, y, ctx) - pair_potential(pt, ctx))
    return complex(np.mean(np.array(diffs, dtype=complex)))


def check_potential_match(ctx, points, tol):
    offset = _potential_offset(ctx, points)
    errors = []
    for pt in points:
        x, y = map_xy(pt, ctx)
        lhs = potential_ratio(x, y, ctx)
        errors.append(_rel(lhs, pair_potential(pt, ctx) + offset))
    return _report("potential_match", errors, tol, points, {"offset": _c(offset)})


def check_jacobian_dw(ctx, points, tol):
    errors = []
    for pt in points:
        x, y = map_xy(pt, ctx)
        w = jacobian(pt, ctx)
        errors.append(abs(12 * discriminant(x, y, ctx) - w * w) / max(abs(w * w), 1e-300))
    return _report("jacobian_DW", errors, tol, points)


def _sigma_product(pt: EllipticPoint, ctx: EllipticContext) -> complex:
    lattice, omega = ctx.lattice, ctx.omega
    num = sigma(pt.y1 - pt.y2, lattice) * sigma(pt.y1 + 2 * pt.y2, lattice) * sigma(2 * pt.y1 + pt.y2, lattice)
    den = 1 + 0j
    for z in (pt.y1, pt.y2, pt.y1 + pt.y2):
        den *= sigma1(z, omega, lattice) ** 3
    return num / den


def check_sigma_factorization(ctx, points, tol):
    ratios = [jacobian(pt, ctx) / _sigma_product(pt, ctx) for pt in points]
    mean, errors = _constancy(ratios)
    return _report("sigma_factorization", errors, tol, points, {"ratio": _c(mean)})


def _trig_wp_error(ctx, pt, alpha) -> float:
    z = pt.y1
    expected = alpha**2 / (4 * cmath.sin(alpha * z / 2) ** 2) - alpha**2 / 12
    return _rel(wp_pair(z, ctx.lattice)[0], expected)


def check_trig_degeneration(case: str, tol: float, count: int, rng: np.random.Generator) -> NumericCheckReport:
    check = f"trig_degeneration_{case}"
    alpha = TRIG_ALPHA
    ctx = EllipticContext.trigonometric(alpha, case)
    points = sample_points(ctx, count, rng)
    errors: List[float] = []
    details: Dict[str, Any] = {"alpha": alpha, "tau": _c(ctx.tau), "mu": _c(ctx.mu)}
    if case == "I":
        for pt in points:
            x, y = map_xy(pt, ctx)
            xt, yt = trigonometric_xy(pt, alpha)
            w = jacobian(pt, ctx)
            wt = trigonometric_jacobian(pt, alpha, case)
            errors.append(max(_trig_wp_error(ctx, pt, alpha), _rel(x, xt), _rel(y, yt), abs(abs(w) - abs(wt)) / abs(wt)))
        details["comparison"] = "|W|"
    else:
        ratios = [jacobian(pt, ctx) / trigonometric_jacobian(pt, alpha, case) for pt in points]
        mean, deviations = _constancy(ratios)
        errors = [max(d, _trig_wp_error(ctx, pt, alpha)) for d, pt in zip(deviations, points)]
        details["comparison"] = "constant ratio"
        details["ratio"] = _c(mean)
    return _report(check, errors, tol, points, details)


def check_discriminant_trig(tol: float, count: int, rng: np.random.Generator) -> NumericCheckReport:
    alpha = TRIG_ALPHA
    ctx = EllipticContext.trigonometric(alpha, "I")
    points = sample_points(ctx, count, rng)
    flat = EllipticContext(ctx.lattice, ctx.index, ctx.omega, ctx.roots, ctx.tau, 0j)
    ratios = []
    for pt in points:
        x, y = map_xy(pt, ctx)
        y3 = pt.y3
        sines = 1 + 0j
        for a, b in ((pt.y1, pt.y2), (pt.y1, y3), (pt.y2, y3)):
            sines *= cmath.sin(alpha * (a - b) / 2) ** 2
        ratios.append(discriminant(x, y, flat) / sines)
    mean, errors = _constancy(ratios)
    return _report("discriminant_trig", errors, tol, points, {"alpha": alpha, "ratio": _c(mean)})


@lru_cache(maxsize=1)
def _p2_matrix():
    from src.qes.bases import pn_basis
    from src.qes.representation import matrix_of
    from src.models.a2 import h_xy

    basis = pn_basis(2)
    return basis, matrix_of(h_xy(), basis)


def check_eigenfunction_residual(ctx, tol, count, rng):
    basis, rep = _p2_matrix()
    values = {"tau": ctx.tau, "mu": ctx.mu}
    dense = np.array([[complex(entry.evaluate(values)) for entry in row] for row in rep.entries], dtype=complex)
    eigenvalues, vectors = np.linalg.eig(dense)
    monomials = basis.monomials()
    nu = -2.0 / 3.0
    coupling = nu * (nu - 1)
    e0 = 3 * nu * (3 * nu + 1) * ctx.tau

    points = sample_points(ctx, min(count, 20), rng, real=True, margin=stencil_margin(ctx, second_order=True))
    offset = _potential_offset(ctx, points)

    def psi_factory(vector):
        def psi(pt: EllipticPoint) -> complex:
            x, y = map_xy(pt, ctx)
            poly = sum(c * m.evaluate({"x": x, "y": y}) for c, m in zip(vector, monomials))
            return poly * discriminant(x, y, ctx) ** (nu / 2)
        return psi

    errors: List[float] = []
    samples: List[EllipticPoint] = []
    energies = []
    for k in range(len(eigenvalues)):
        eps = complex(eigenvalues[k])
        energy = eps + e0 - coupling * offset
        energies.append(_c(energy))
        psi = psi_factory(vectors[:, k])
        for pt in points:
            try:
                value = psi(pt)
                h_psi = -laplacian_a2(psi, pt, ctx) + coupling * pair_potential(pt, ctx) * value
            except PoleProximityError:
                continue
            errors.append(abs(h_psi - energy * value) / ((1 + abs(energy)) * max(abs(value), 1e-300)))
            samples.append(pt)
    details = {"states": len(eigenvalues), "points": len(points), "energies": energies,
               "potential_offset": _c(offset)}
    return _report("eigenfunction_residual", errors, tol, samples, details)


def check_sector_n2_elliptic(ctx, points, tol):
    us, xys = [], []
    direct = []
    for pt in points:
        u = linear_system_coordinates(pt, ctx)
        x, y = map_xy(pt, ctx)
        us.append(u)
        xys.append((x, y))
        direct.append(max(_rel(u[0], x), _rel(u[1], y)))
    a = np.array([[u[0], u[1], 1] for u in us], dtype=complex)
    fitted = {}
    fit_errors = []
    for i, name in enumerate(("x", "y")):
        target = np.array([xy[i] for xy in xys], dtype=complex)
        coef, *_ = np.linalg.lstsq(a, target, rcond=None)
        fitted[name] = [_c(complex(c)) for c in coef]
        residual = np.abs(a @ coef - target) / np.maximum(np.abs(target), 1e-300)
        fit_errors.append(float(np.max(residual)))
    details = {
        "direct_max_error": float(max(direct)),
        "direct_median_error": float(np.median(direct)),
        "affine_fit": fitted,
        "affine_fit_max_error": max(fit_errors),
    }
    return _report("matushko_n2", direct, tol, points, details)


# ----------------------------------------------------------------------
# Dispatch
# ----------------------------------------------------------------------


_SIMPLE_CHECKS = {
    "wp_ode": check_wp_ode,
    "wp_duplication": check_wp_duplication,
    "sigma_quasi_periodicity": check_sigma_quasi_periodicity,
    "jacobian_1d": check_jacobian_1d,
    "map_parity": check_map_parity,
    "potential_match": check_potential_match,
    "jacobian_DW": check_jacobian_dw,
    "sigma_factorization": check_sigma_factorization,
    "matushko_n2": check_sector_n2_elliptic,
}


def numeric_check(check: str, ctx: EllipticContext, samples: Optional[int] = None,
                  seed: Optional[int] = None, tolerance: Optional[float] = None) -> NumericCheckReport:
    """Run one cross-check on ``samples`` seeded points of ``ctx``."""
    if check not in CHECK_IDS:
        raise ConfigError(f"unknown check {check!r}")
    settings = get_settings()
    samples = settings.default_samples if samples is None else samples
    seed = settings.default_seed if seed is None else seed
    tol = CHECK_TOLERANCES[check] if tolerance is None else tolerance
    # one generator per check so that reports do not depend on which others ran
    rng = np.random.default_rng([seed, CHECK_IDS.index(check)])

    if check in _SIMPLE_CHECKS:
        points = sample_points(ctx, samples, rng)
        report = _SIMPLE_CHECKS[check](ctx, points, tol)
    elif check == "rational_limit":
        report = check_rational_limit(tol, samples, rng)
    elif check == "trig_degeneration_I":
        report = check_trig_degeneration("I", tol, samples, rng)
    elif check == "trig_degeneration_II":
        report = check_trig_degeneration("II", tol, samples, rng)
    elif check == "discriminant_trig":
        report = check_discriminant_trig(tol, samples, rng)
    else:
        report = check_eigenfunction_residual(ctx, tol, samples, rng)
    logger.info("numeric check", check=check, samples=report.samples, max_error=report.max_error,
                passed=report.passed)
    return report


def run_checks(config: LatticeConfig) -> List[NumericCheckReport]:
    """All checks requested by a lattice configuration, in canonical order."""
    ctx = EllipticContext.from_config(config)
    requested = set(config.checks)
    return [
        numeric_check(check, ctx, config.samples, config.seed, config.tolerance(check))
        for check in CHECK_IDS
        if check in requested
    ]
