"""Exception hierarchy for the QES engine.

Mathematical verification outcomes are reported as data; exceptions are
reserved for misuse (bad charts, unknown tags, invalid configuration) and for
numerics that cannot produce a trustworthy value.
"""

from typing import Any, List, Optional


class QESError(Exception):
    """Base class for all engine errors."""


class ChartMismatchError(QESError):
    """Operators or polynomials from different charts were combined."""

    def __init__(self, left: Any, right: Any):
        super().__init__(f"chart mismatch: {left} vs {right}")
        self.left = left
        self.right = right


class ParityViolationError(QESError):
    """An operator is not even under y -> -y and cannot be restricted to v = y^2."""

    def __init__(self, term: str):
        super().__init__(f"parity violation in term {term}")
        self.term = term


class UnknownModelError(QESError):
    """A model tag has no constructor."""


class UnknownGeneratorError(QESError):
    """A generator symbol does not belong to the requested algebra."""


class InvarianceError(QESError):
    """An operator does not preserve the requested polynomial space."""

    def __init__(self, message: str, leakage: Optional[List[str]] = None):
        super().__init__(message)
        self.leakage = leakage or []


class NotPolynomialError(QESError):
    """A rational function was expected to reduce to a polynomial."""


class PoleProximityError(QESError):
    """An elliptic function was evaluated too close to a lattice point."""


class DegenerateDenominatorError(QESError):
    """The change of variables hit a vanishing denominator."""


class NonConvergenceError(QESError):
    """An iterative numeric method did not converge within its cap."""


class AnsatzTooLargeError(QESError):
    """A commutant ansatz exceeds the configured unknown cap."""

    def __init__(self, unknowns: int, cap: int):
        super().__init__(f"ansatz has {unknowns} unknowns, cap is {cap}")
        self.unknowns = unknowns
        self.cap = cap


class ConfigError(QESError):
    """Run or lattice configuration failed validation."""
