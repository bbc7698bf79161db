"""
Tests for the command-line surface.
"""
import json

import pytest
import structlog
from typer.testing import CliRunner

from src.cli.main import app
from src.cli.common import EXIT_CONFIG


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def out(tmp_path):
    return tmp_path / "report.json"


class TestSpectrumCommand:
    """spectrum and eigenfunctions."""

    def test_ground_state(self, runner, out):
        result = runner.invoke(app, ["spectrum", "--model", "a2", "--n", "0", "--tau", "1", "--mu", "0",
                                     "--output", str(out)])
        assert result.exit_code == 0
        doc = json.loads(out.read_text())
        assert doc["command"] == "spectrum"
        assert doc["result"]["n"] == 0
        assert doc["run"]["bindings"] == {"mu": "0", "tau": "1"}

    def test_bad_rational(self, runner, out):
        result = runner.invoke(app, ["spectrum", "--tau", "abc", "--output", str(out)])
        assert result.exit_code == EXIT_CONFIG
        assert not out.exists()

    def test_lam_on_a2(self, runner, out):
        result = runner.invoke(app, ["spectrum", "--n", "1", "--tau", "1", "--mu", "0", "--lam", "1",
                                     "--output", str(out)])
        assert result.exit_code == EXIT_CONFIG

    def test_eigenfunctions_need_numbers(self, runner, out):
        # h on P_2 depends on tau and mu; on P_1 it is the zero matrix
        result = runner.invoke(app, ["eigenfunctions", "--n", "2", "--output", str(out)])
        assert result.exit_code == EXIT_CONFIG


class TestVerifyCommand:
    """verify."""

    def test_single_identity(self, runner, out):
        result = runner.invoke(app, ["verify", "-i", "k_commutes", "--output", str(out)])
        assert result.exit_code == 0
        doc = json.loads(out.read_text())
        assert doc["result"]["clean"] is True
        assert [r["identity"] for r in doc["result"]["reports"]] == ["k_commutes"]

    def test_unknown_identity(self, runner, out):
        result = runner.invoke(app, ["verify", "-i", "no_such_identity", "--output", str(out)])
        assert result.exit_code == EXIT_CONFIG


class TestCrosscheckCommand:
    """crosscheck."""

    def test_missing_lattice(self, runner, tmp_path, out):
        result = runner.invoke(app, ["crosscheck", "-l", str(tmp_path / "missing.json"), "--output", str(out)])
        assert result.exit_code == EXIT_CONFIG

    def test_ode_only(self, runner, tmp_path, out):
        lattice = tmp_path / "ode.json"
        lattice.write_text(json.dumps({"omega1": [1.0, 0.0], "omega2": [0.0, 1.3], "checks": ["wp_ode"]}))
        result = runner.invoke(app, ["crosscheck", "-l", str(lattice), "--samples", "4", "--output", str(out)])
        assert result.exit_code == 0
        doc = json.loads(out.read_text())
        assert doc["result"]["passed"] is True
        assert doc["result"]["lattice"]["samples"] == 4


class TestDiscoverCommand:
    """discover."""

    def test_commutant_needs_bindings(self, runner, out):
        result = runner.invoke(app, ["discover", "--mode", "commutant", "--tau", "1", "--output", str(out)])
        assert result.exit_code == EXIT_CONFIG

    def test_small_commutant(self, runner, out):
        result = runner.invoke(app, ["discover", "--order", "0", "--degree", "0", "--tau", "1", "--mu", "0",
                                     "--nu", "1/2", "--output", str(out)])
        assert result.exit_code == 0
        assert json.loads(out.read_text())["result"]["mode"] == "commutant"


def test_version(runner):
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0


def test_info_lists_identities(runner):
    result = runner.invoke(app, ["info"])
    assert result.exit_code == 0
    assert "sextic_n2" in result.output


def test_logging_after_invoke(runner, capsys):
    # the runner closes its own stderr once invoke returns
    assert runner.invoke(app, ["version"]).exit_code == 0
    structlog.get_logger().info("after invoke")
    assert "after invoke" in capsys.readouterr().err
