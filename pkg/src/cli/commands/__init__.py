"""CLI command modules."""