"""Deterministic JSON output for every command.

Documents carry the schema version, the settings in force and the validated
run configuration, and are checked against a JSON Schema before they are
written. Nothing time-dependent is recorded, so identical inputs give
byte-identical files.
"""

import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from jsonschema import Draft7Validator
from structlog import get_logger

from src.core.config import Settings, get_settings
from src.core.constants import SCHEMA_VERSION
from src.core.exceptions import ConfigError

logger = get_logger()

_RESULT_REQUIRED = {
    "verify": ["reports", "summary", "clean"],
    "spectrum": ["model", "n", "char_poly", "roots"],
    "eigenfunctions": ["model", "n", "eigenfunctions"],
    "crosscheck": ["lattice", "checks", "passed"],
    "discover": ["mode"],
}

DOCUMENT_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["schema_version", "command", "defaults", "run", "result"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"enum": sorted(_RESULT_REQUIRED)},
        "defaults": {"type": "object"},
        "run": {"type": "object"},
        "result": {"type": "object"},
    },
    "allOf": [
        {
            "if": {"properties": {"command": {"const": command}}},
            "then": {"properties": {"result": {"required": required}}},
        }
        for command, required in sorted(_RESULT_REQUIRED.items())
    ],
}


class ReportExporter:
    """Wraps command results in a versioned envelope and writes them."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.validator = Draft7Validator(DOCUMENT_SCHEMA)

    def document(self, command: str, result: Dict[str, Any], run: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "defaults": self.settings.defaults_block(),
            "run": run or {},
            "result": result,
        }
        self.validate(doc)
        return doc

    def validate(self, doc: Dict[str, Any]) -> None:
        errors = sorted(self.validator.iter_errors(doc), key=lambda e: list(e.path))
        if errors:
            where = "/".join(str(p) for p in errors[0].path) or "<root>"
            raise ConfigError(f"output does not match schema at {where}: {errors[0].message}")

    @staticmethod
    def dumps(doc: Dict[str, Any]) -> str:
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def write(self, doc: Dict[str, Any], output: Optional[Path] = None) -> None:
        """Write to ``output``, or to stdout when no path is given."""
        text = self.dumps(doc)
        if output is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        output = Path(output)
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")
        logger.info("report written", path=str(output), command=doc.get("command"), bytes=len(text))
