"""Tests for settings and run configuration."""

import json
from fractions import Fraction
from pathlib import Path

import pytest
from pydantic import ValidationError

from src.core.config import LatticeConfig, RunConfig, get_settings, parse_rational
from src.core.constants import CHECK_IDS, CHECK_TOLERANCES
from src.core.exceptions import ConfigError


class TestSettings:
    def test_defaults(self):
        settings = get_settings()
        assert settings.series_terms == 24
        assert settings.discovery_unknown_cap == 2500
        assert settings.workers == 1

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("QES_SERIES_TERMS", "30")
        monkeypatch.setenv("QES_WORKERS", "4")
        settings = get_settings()
        assert settings.series_terms == 30
        assert settings.workers == 4

    def test_invalid_environment_value(self, monkeypatch):
        monkeypatch.setenv("QES_DEFAULT_SAMPLES", "0")
        with pytest.raises(ValidationError):
            get_settings()

    def test_defaults_block_is_plain_data(self):
        block = get_settings().defaults_block()
        assert block["root_tolerance"] == 1e-12
        json.dumps(block)


class TestParseRational:
    @pytest.mark.parametrize("raw, expected", [
        ("1/3", Fraction(1, 3)),
        (" -2 ", Fraction(-2)),
        ("-0.25", Fraction(-1, 4)),
        (3, Fraction(3)),
        (0.5, Fraction(1, 2)),
    ])
    def test_accepted(self, raw, expected):
        assert parse_rational(raw) == expected

    @pytest.mark.parametrize("raw", ["abc", "1/0", True, None])
    def test_rejected(self, raw):
        with pytest.raises(ConfigError):
            parse_rational(raw)


class TestRunConfig:
    def test_bindings_are_rational(self):
        config = RunConfig(command="spectrum", bindings={"tau": "1", "mu": "-1/5"})
        assert config.rational_bindings() == {"mu": Fraction(-1, 5), "tau": Fraction(1)}

    def test_unknown_parameter(self):
        with pytest.raises(ValidationError):
            RunConfig(command="spectrum", bindings={"omega": "1"})

    def test_non_rational_binding(self):
        with pytest.raises(ValidationError):
            RunConfig(command="spectrum", bindings={"tau": "abc"})

    def test_unknown_command(self):
        with pytest.raises(ValidationError):
            RunConfig(command="plot")

    def test_n_bounds(self):
        with pytest.raises(ValidationError):
            RunConfig(command="spectrum", n=13)

    def test_seed_defaults_to_settings(self):
        assert RunConfig(command="verify").seed == get_settings().default_seed


class TestLatticeConfig:
    def test_from_file(self, lattice_file):
        config = LatticeConfig.from_file(lattice_file)
        assert config.omega2_complex == 1.3j
        assert config.samples == 5
        assert config.tolerance("wp_ode") == CHECK_TOLERANCES["wp_ode"]

    def test_tolerance_override(self):
        config = LatticeConfig(omega1=(1, 0), omega2=(0, 1), tolerances={"wp_ode": 1e-6})
        assert config.tolerance("wp_ode") == 1e-6

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            LatticeConfig.from_file(tmp_path / "absent.json")

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            LatticeConfig.from_file(path)

    def test_unknown_check(self, tmp_path):
        path = tmp_path / "lattice.json"
        path.write_text(json.dumps({"omega1": [1, 0], "omega2": [0, 1], "checks": ["nope"]}))
        with pytest.raises(ConfigError):
            LatticeConfig.from_file(path)

    def test_shipped_lattice_runs_every_check(self):
        path = Path(__file__).resolve().parents[3] / "config" / "lattice_rectangular.json"
        config = LatticeConfig.from_file(path)
        assert config.checks == CHECK_IDS
        assert config.samples == get_settings().default_samples
