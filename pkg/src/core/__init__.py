"""Core configuration, constants and exceptions for the QES engine."""
