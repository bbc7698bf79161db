"""
Tests for the JSON report envelope.
"""
import json

import pytest

from src.core.constants import SCHEMA_VERSION
from src.core.exceptions import ConfigError
from src.export import ReportExporter


class TestReportExporter:
    """Test ReportExporter functionality."""

    @pytest.fixture
    def exporter(self):
        """Create exporter instance."""
        return ReportExporter()

    @pytest.fixture
    def spectrum_result(self):
        return {
            "model": "a2",
            "n": 0,
            "bindings": {},
            "char_poly": {"degree": 1, "coefficients": ["1", "0"]},
            "roots": [{"re": 0.0, "im": 0.0, "multiplicity": 1, "exact": "0"}],
            "residual_ok": True,
        }

    def test_envelope(self, exporter, spectrum_result):
        doc = exporter.document("spectrum", spectrum_result, {"command": "spectrum"})
        assert doc["schema_version"] == SCHEMA_VERSION
        assert doc["defaults"]["series_terms"] == 24
        assert doc["result"] is spectrum_result

    def test_missing_result_field(self, exporter):
        with pytest.raises(ConfigError, match="result"):
            exporter.document("spectrum", {"model": "a2", "n": 0})

    def test_unknown_command(self, exporter, spectrum_result):
        with pytest.raises(ConfigError):
            exporter.document("plot", spectrum_result)

    def test_dumps_is_deterministic(self, exporter, spectrum_result):
        doc = exporter.document("spectrum", spectrum_result)
        reordered = dict(reversed(list(doc.items())))
        assert ReportExporter.dumps(doc) == ReportExporter.dumps(reordered)
        assert ReportExporter.dumps(doc).endswith("}\n")

    def test_write_to_file(self, exporter, spectrum_result, tmp_path):
        path = tmp_path / "out" / "spectrum.json"
        doc = exporter.document("spectrum", spectrum_result)
        exporter.write(doc, path)
        assert json.loads(path.read_text()) == json.loads(ReportExporter.dumps(doc))

    def test_write_to_stdout(self, exporter, spectrum_result, capsys):
        exporter.write(exporter.document("spectrum", spectrum_result))
        assert json.loads(capsys.readouterr().out)["command"] == "spectrum"

    def test_discover_needs_only_mode(self, exporter):
        doc = exporter.document("discover", {"mode": "commutant"})
        assert doc["result"]["mode"] == "commutant"
