"""JSON report output."""

from src.export.exporter import DOCUMENT_SCHEMA, ReportExporter

__all__ = ["DOCUMENT_SCHEMA", "ReportExporter"]
