"""Exact verification of the model identities."""

from src.validation.identities import IdentityVerifier, verify_identity
from src.validation.report import Status, VerificationReport

__all__ = ["IdentityVerifier", "verify_identity", "Status", "VerificationReport"]
