"""Structured outcomes of exact identity checks."""

from enum import Enum
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, Field

from src.operators.diffop import DiffOp


class Status(str, Enum):
    EXACT_PASS = "ExactPass"
    EXACT_FAIL = "ExactFail"
    PASS_WITH_DISCREPANCIES = "PassWithDiscrepancies"


class VerificationReport(BaseModel):
    """Result of one identity check; failures are data, not exceptions."""

    identity: str
    status: Status
    residual_terms: List[Tuple[int, int, str]] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is not Status.EXACT_FAIL

    @classmethod
    def from_residual(cls, identity: str, residual: DiffOp, **kwargs: Any) -> "VerificationReport":
        """ExactPass on a zero residual, ExactFail carrying the residual otherwise."""
        if residual.is_zero():
            return cls(identity=identity, status=Status.EXACT_PASS, **kwargs)
        return cls(
            identity=identity,
            status=Status.EXACT_FAIL,
            residual_terms=residual.reduce().to_triples(),
            **kwargs,
        )

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")
