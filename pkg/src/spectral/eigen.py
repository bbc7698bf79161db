"""Eigenpairs of representation matrices and the eigenfunctions they describe."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from structlog import get_logger

from src.algebra.mpoly import MPoly
from src.models.a2 import coupling_a2
from src.models.g2 import coupling_g2_a2, g2_couplings
from src.qes.bases import MonomialBasis
from src.qes.linalg import kernel
from src.qes.representation import RepMatrix
from src.spectral.charpoly import char_poly
from src.spectral.roots import Root, solve_rational

logger = get_logger()

Coordinate = Union[Fraction, complex]


@dataclass
class Eigenpair:
    """An eigenvalue with one eigenvector; exact when the eigenvalue is rational."""

    root: Root
    vector: List[Coordinate]
    exact: bool
    residual: float = 0.0

    @property
    def value(self) -> complex:
        return self.root.value

    def to_dict(self, basis: Optional[MonomialBasis] = None) -> Dict[str, Any]:
        out = self.root.to_dict()
        out["exact_vector"] = self.exact
        out["residual"] = self.residual
        out["vector"] = [_coord_str(c) for c in self.vector]
        if basis is not None:
            out["basis"] = basis.labels()
        return out


def _coord_str(c: Coordinate) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return repr(complex(c))


def eigenpairs(matrix: RepMatrix) -> List[Eigenpair]:
    """One eigenvector per eigenspace dimension for every eigenvalue of a numeric matrix."""
    entries = matrix.to_fractions()
    n = len(entries)
    roots = solve_rational(char_poly(matrix).rational_coefficients())
    dense = np.array([[float(c) for c in row] for row in entries], dtype=complex)
    pairs: List[Eigenpair] = []
    for root in roots:
        if root.exact is not None and not root.exact.b:
            e = root.exact.a
            shifted = [[entries[i][j] - (e if i == j else 0) for j in range(n)] for i in range(n)]
            for vec in kernel(shifted, n):
                pairs.append(Eigenpair(root, [Fraction(c.constant_term()) for c in vec], exact=True))
            continue
        shifted = dense - root.value * np.eye(n)
        _, singular, vh = np.linalg.svd(shifted)
        v = vh.conj()[-1]
        v = v / v[np.argmax(np.abs(v))]
        residual = float(np.linalg.norm(dense @ v - root.value * v))
        pairs.append(Eigenpair(root, [complex(c) for c in v], exact=False, residual=residual))
    logger.debug("eigenpairs computed", size=n, pairs=len(pairs))
    return pairs


@dataclass
class EigenfunctionDescriptor:
    """``polynomial * prod(base ** exponent)`` with the coupling it belongs to."""

    model: str
    n: int
    polynomial: str
    gauge: Dict[str, str] = field(default_factory=dict)
    couplings: Dict[str, str] = field(default_factory=dict)
    energy: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model,
            "n": self.n,
            "polynomial": self.polynomial,
            "gauge": dict(sorted(self.gauge.items())),
            "couplings": dict(sorted(self.couplings.items())),
            "energy": self.energy,
        }


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _polynomial_text(basis: MonomialBasis, vector: Sequence[Coordinate]) -> str:
    if all(isinstance(c, Fraction) for c in vector):
        return basis.combination(list(vector)).to_string()
    labels = basis.labels()
    parts = [f"({_coord_str(c)})*{label}" for c, label in zip(vector, labels) if abs(complex(c)) > 0]
    return " + ".join(parts) or "0"


def assemble_eigenfunction(vector: Sequence[Coordinate], basis: MonomialBasis, model: str,
                           lam: Optional[Fraction] = None, energy: Optional[Root] = None) -> EigenfunctionDescriptor:
    """Attach the ground-state gauge factor to a polynomial eigenvector.

    A2: ``P(x, y) D^(-n/6)`` at ``kappa = n(n+3)/9``. G2:
    ``Q(u, v) v^(3 lambda/2) D~^((nu - lambda)/2)`` with ``nu = -n/3``; at
    ``lambda = 1/3`` this is the A2 eigenfunction at ``kappa = (n+1)(n+4)/9``.
    """
    n = basis.n
    poly = _polynomial_text(basis, vector)
    nu = Fraction(-n, 3)
    energy_text = None
    if energy is not None:
        energy_text = str(energy.exact) if energy.exact is not None else repr(energy.value)
    if model.lower() == "a2":
        return EigenfunctionDescriptor(
            model="A2", n=n, polynomial=poly,
            gauge={"D_xy": _frac_str(Fraction(-n, 6))},
            couplings={"nu": _frac_str(nu), "kappa": _frac_str(coupling_a2(n))},
            energy=energy_text,
        )
    if lam is None:
        raise ValueError("the G2 eigenfunction needs a value of lambda")
    lam = Fraction(lam)
    kappa, kappa_2 = g2_couplings(nu, lam)
    couplings = {
        "nu": _frac_str(nu),
        "lam": _frac_str(lam),
        "kappa": MPoly.lift(kappa).to_string(),
        "kappa_2": MPoly.lift(kappa_2).to_string(),
    }
    if lam == Fraction(1, 3):
        couplings["kappa_a2"] = _frac_str(coupling_g2_a2(n))
    return EigenfunctionDescriptor(
        model="G2", n=n, polynomial=poly,
        gauge={"v": _frac_str(3 * lam / 2), "D_uv": _frac_str((nu - lam) / 2)},
        couplings=couplings,
        energy=energy_text,
    )
