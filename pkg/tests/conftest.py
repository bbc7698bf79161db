"""Pytest configuration and fixtures."""

import json
import random
from fractions import Fraction

import numpy as np
import pytest
import structlog

from src.algebra.mpoly import MPoly, variables
from src.core.config import get_settings
from src.elliptic import EllipticContext
from src.models import a2, g2


@pytest.fixture(autouse=True)
def clear_settings_cache():
    """Settings are cached per process; env overrides in a test must not leak."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def reset_structlog():
    """CLI invocations configure structlog globally; restore the defaults afterwards."""
    yield
    structlog.reset_defaults()


@pytest.fixture(scope="session")
def syms():
    """Symbolic variables keyed by name."""
    names = ("x", "y", "u", "v", "tau", "mu", "nu", "lam")
    return dict(zip(names, variables(*names)))


@pytest.fixture
def rng():
    """Deterministic generator for property tests."""
    return random.Random(1234)


@pytest.fixture
def np_rng():
    return np.random.default_rng(1234)


def random_poly(rng: random.Random, names=("x", "y", "tau"), terms: int = 4, degree: int = 3) -> MPoly:
    total = MPoly.zero()
    for _ in range(terms):
        exps = {n: rng.randint(0, degree) for n in names}
        total = total + MPoly.monomial(exps, Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
    return total


@pytest.fixture
def poly_factory(rng):
    return lambda **kwargs: random_poly(rng, **kwargs)


@pytest.fixture(scope="session")
def h_xy():
    return a2.h_xy()


@pytest.fixture(scope="session")
def k_xy():
    return a2.k_xy()


@pytest.fixture(scope="session")
def h_g2():
    return g2.h_g2()


@pytest.fixture(scope="session")
def generic_bindings():
    return {"tau": Fraction(2, 3), "mu": Fraction(-1, 5), "nu": Fraction(3, 7)}


@pytest.fixture(scope="session")
def rectangular_ctx():
    """Rectangular lattice with half-periods 1 and 1.3i."""
    return EllipticContext.from_half_periods(1.0, 1.3j)


@pytest.fixture(scope="session")
def stretched_ctx():
    """Near-degenerate lattice, period ratio 10^3."""
    return EllipticContext.from_half_periods(1.0, 1000j)


@pytest.fixture
def lattice_file(tmp_path):
    """A small lattice configuration on disk."""
    path = tmp_path / "lattice.json"
    path.write_text(json.dumps({
        "omega1": [1.0, 0.0],
        "omega2": [0.0, 1.3],
        "samples": 5,
        "seed": 7,
        "checks": ["wp_ode", "map_parity", "potential_match"],
    }))
    return path
