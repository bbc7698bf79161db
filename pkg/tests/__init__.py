"""Test package for the QES engine."""
