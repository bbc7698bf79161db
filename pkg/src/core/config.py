"""Configuration for the QES engine.

Process-wide knobs come from the environment (``QES_`` prefix, ``.env``
supported); per-run inputs are pydantic models validated before execution.
"""

import json
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.core.constants import CHECK_IDS, CHECK_TOLERANCES
from src.core.exceptions import ConfigError


class Settings(BaseSettings):
    """Numeric and runtime knobs."""

    model_config = SettingsConfigDict(env_prefix="QES_", env_file=".env", extra="ignore")

    # Root finding
    root_tolerance: float = Field(default=1e-12, gt=0, description="Relative residual |p(E)|/||p||")
    cluster_threshold: float = Field(default=1e-8, gt=0, description="Root clustering radius factor")
    root_max_iterations: int = Field(default=500, ge=10)
    root_retry_attempts: int = Field(default=3, ge=1)

    # Elliptic functions
    series_terms: int = Field(default=24, ge=6, description="q-series truncation for lattice functions")
    fd_step_factor: float = Field(default=1e-5, gt=0, description="Finite-difference step per min period")
    fd_second_step_factor: float = Field(default=1e-3, gt=0, description="Step for second derivatives per min period")
    richardson_levels: int = Field(default=1, ge=0, le=3)

    # Discovery
    discovery_unknown_cap: int = Field(default=2500, ge=1)
    discovery_max_primes: int = Field(default=16, ge=2, description="Primes tried before giving up on reconstruction")

    # Runs
    default_seed: int = Field(default=20240601)
    default_samples: int = Field(default=100, ge=1)
    workers: int = Field(default=1, ge=1, description="Worker processes for independent jobs")

    def defaults_block(self) -> Dict[str, object]:
        """Settings echoed into every JSON output."""
        return self.model_dump()


@lru_cache()
def get_settings() -> Settings:
    """Return the process-wide settings."""
    return Settings()


def parse_rational(value: object) -> Fraction:
    """Parse ``3``, ``"1/3"``, ``"-0.25"`` or a Fraction into an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ConfigError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError(f"not a rational number: {value!r}") from e
    raise ConfigError(f"not a rational number: {value!r}")


class RunConfig(BaseModel):
    """Validated inputs of one CLI run."""

    command: Literal["verify", "spectrum", "eigenfunctions", "crosscheck", "discover"]
    model: Literal["a2", "g2"] = "a2"
    n: int = Field(default=2, ge=0, le=12)
    bindings: Dict[str, str] = Field(default_factory=dict, description="Parameter bindings as rational strings")
    lattice: Optional[Path] = None
    output: Optional[Path] = None
    seed: int = Field(default_factory=lambda: get_settings().default_seed)
    tolerances: Dict[str, float] = Field(default_factory=dict)

    @field_validator("bindings")
    @classmethod
    def check_bindings(cls, value: Dict[str, str]) -> Dict[str, str]:
        for name, raw in value.items():
            if name not in ("tau", "mu", "nu", "lam"):
                raise ValueError(f"unknown parameter {name}")
            try:
                Fraction(str(raw))
            except (ValueError, ZeroDivisionError) as e:
                raise ValueError(f"{name}={raw!r} is not rational") from e
        return value

    @field_validator("tolerances")
    @classmethod
    def check_tolerances(cls, value: Dict[str, float]) -> Dict[str, float]:
        for name, tol in value.items():
            if name not in CHECK_TOLERANCES:
                raise ValueError(f"unknown check {name}")
            if tol <= 0:
                raise ValueError(f"tolerance for {name} must be positive")
        return value

    def rational_bindings(self) -> Dict[str, Fraction]:
        return {name: Fraction(str(raw)) for name, raw in sorted(self.bindings.items())}


class LatticeConfig(BaseModel):
    """Lattice description for numeric cross-checks."""

    omega1: Tuple[float, float] = Field(..., description="First half-period as [re, im]")
    omega2: Tuple[float, float] = Field(..., description="Second half-period as [re, im]")
    half_period_index: Optional[int] = Field(default=None, ge=1, le=3)
    samples: int = Field(default_factory=lambda: get_settings().default_samples, ge=1)
    seed: int = Field(default_factory=lambda: get_settings().default_seed)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    checks: List[str] = Field(default_factory=lambda: list(CHECK_IDS))

    @field_validator("checks")
    @classmethod
    def check_checks(cls, value: List[str]) -> List[str]:
        unknown = [c for c in value if c not in CHECK_IDS]
        if unknown:
            raise ValueError(f"unknown checks: {unknown}")
        return value

    @field_validator("tolerances")
    @classmethod
    def check_tolerances(cls, value: Dict[str, float]) -> Dict[str, float]:
        for name, tol in value.items():
            if name not in CHECK_TOLERANCES or tol <= 0:
                raise ValueError(f"bad tolerance entry {name}={tol}")
        return value

    @property
    def omega1_complex(self) -> complex:
        return complex(*self.omega1)

    @property
    def omega2_complex(self) -> complex:
        return complex(*self.omega2)

    def tolerance(self, check: str) -> float:
        return self.tolerances.get(check, CHECK_TOLERANCES[check])

    @classmethod
    def from_file(cls, path: Path) -> "LatticeConfig":
        """Load and validate a lattice JSON file."""
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read lattice config {path}: {e}") from e
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"invalid lattice config {path}: {e}") from e
