"""Commutants of Hamiltonians inside finite ansätze.

``commutant_solve`` finds every ansatz operator commuting with a bound
Hamiltonian; ``find_km`` looks for the first-order-corrected G2 integral
``k^2 + lam K`` with ``K`` of order at most five.
"""

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np
from structlog import get_logger

from src.algebra.mpoly import MPoly
from src.core.config import get_settings
from src.discovery.ansatz import (
    AnsatzSpec,
    bind,
    commutator_system,
    operator_from_vector,
    spec_from_pattern,
    vector_of,
)
from src.discovery.modular import ModularSolution, SparseRow, solve_modular
from src.models import a2, g2
from src.operators.diffop import Chart, DiffOp, commutator, compose
from src.operators.parity import restrict_to_even

logger = get_logger()

# k vanishes identically in its lower orders at these couplings
_EXCLUDED_NU = {Fraction(-1, 3), Fraction(-2, 3)}

KM_MAX_ORDER = 5


def commutes(h: DiffOp, k: DiffOp) -> bool:
    """``[h, k] = 0`` decided by acting on monomials.

    A non-zero operator of order ``r`` moves some monomial of degree at most
    ``r``, so monomials up to ``ord h + ord k - 1`` decide the question. This
    path never forms the commutator in normal form.
    """
    if h.is_zero() or k.is_zero():
        return True
    vx, vy = h.chart.vars
    top = h.order + k.order - 1
    for d in range(top + 1):
        for p in range(d + 1):
            m = MPoly.monomial({vx: p, vy: d - p})
            if not (h.apply(k.apply(m)) - k.apply(h.apply(m))).reduce().is_zero():
                return False
    return True


def _fraction_pivots(matrix: List[List[Fraction]]) -> List[int]:
    """Pivot columns of a small rational matrix."""
    rows = [list(r) for r in matrix]
    pivots: List[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        k = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def trivial_solutions(h: DiffOp, spec: AnsatzSpec) -> Dict[str, DiffOp]:
    """Identity and powers of ``h`` that fit the ansatz."""
    out: Dict[str, DiffOp] = {}
    candidates = [("I", DiffOp.identity(h.chart))]
    power, j = h, 1
    while j * max(h.order, 1) <= spec.max_order:
        candidates.append(("h" if j == 1 else f"h^{j}", power))
        power, j = compose(power, h), j + 1
    for name, op in candidates:
        if op.order <= spec.max_order and vector_of(spec, op) is not None:
            out[name] = op
    return out


@dataclass
class CommutantBasis:
    """Exact commutant of ``h`` within an ansatz.

    ``members`` spans the commutant modulo the trivial solutions; every
    member is re-checked by ``commutes``.
    """

    spec: AnsatzSpec
    h: DiffOp
    solution: ModularSolution
    members: List[DiffOp]
    trivial: Dict[str, DiffOp]
    trivial_dim: int
    verified: List[bool]
    equations: int

    @property
    def nullspace_dim(self) -> int:
        return len(self.solution.basis)

    @property
    def nontrivial_dim(self) -> int:
        return self.nullspace_dim - self.trivial_dim

    @property
    def all_verified(self) -> bool:
        return all(self.verified)

    def contains(self, op: DiffOp) -> bool:
        """Membership of ``op`` (bound at the ansatz parameters) in the full commutant."""
        bound = bind(op, self.spec.rational_bindings())
        vector = vector_of(self.spec, bound)
        if vector is None:
            return False
        expected = [Fraction(0)] * len(vector)
        for f, basis_vector in zip(self.solution.free, self.solution.basis):
            if vector[f]:
                expected = [e + vector[f] * b for e, b in zip(expected, basis_vector)]
        return expected == vector

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spec": self.spec.to_dict(),
            "bindings": dict(sorted(self.spec.bindings.items())),
            "equations": self.equations,
            "rank": self.solution.rank,
            "nullspace_dim": self.nullspace_dim,
            "trivial": sorted(self.trivial),
            "trivial_dim": self.trivial_dim,
            "nontrivial_dim": self.nontrivial_dim,
            "members": [[list(t) for t in m.to_triples()] for m in self.members],
            "verified": self.verified,
            "primes_used": self.solution.primes_used,
        }


def commutant_solve(h: DiffOp, spec: AnsatzSpec) -> CommutantBasis:
    """Every ansatz operator ``K`` with ``[h, K] = 0`` at the ansatz bindings."""
    count = spec.check_size()
    hb = bind(h, spec.rational_bindings())
    logger.info("commutant solve", chart=spec.chart.value, max_order=spec.max_order, unknowns=count)
    rows, _, keys = commutator_system(hb, spec)
    solution = solve_modular(rows, count)
    full = [operator_from_vector(spec, v) for v in solution.basis]

    trivial = trivial_solutions(hb, spec)
    # a commutant vector is fixed by its free coordinates
    coords = []
    for op in trivial.values():
        vector = vector_of(spec, op)
        coords.append([vector[f] for f in solution.free])
    taken = set(_fraction_pivots(coords)) if coords and solution.free else set()
    members = [op for i, op in enumerate(full) if i not in taken]

    verified = [commutes(hb, m) for m in members]
    logger.info(
        "commutant found",
        nullspace_dim=len(full),
        trivial_dim=len(taken),
        verified=all(verified),
    )
    return CommutantBasis(spec, hb, solution, members, trivial, len(taken), verified, len(keys))


# ----------------------------------------------------------------------
# k_A2 rediscovery across random bindings
# ----------------------------------------------------------------------


def random_bindings(count: int, seed: int, names: Sequence[str] = ("tau", "mu", "nu")) -> List[Dict[str, Fraction]]:
    """Seeded non-zero rational bindings; ``nu`` avoids the couplings where k degenerates."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        binding = {}
        for name in names:
            num = rng.choice([i for i in range(-9, 10) if i])
            binding[name] = Fraction(num, rng.randint(1, 7))
        if binding.get("nu") in _EXCLUDED_NU:
            continue
        out.append(binding)
    return out


def a2_ansatz(bindings: Mapping[str, object], margin: int = 1) -> AnsatzSpec:
    """Order-three XY ansatz with the coefficient degrees of ``k_xy`` plus ``margin``."""
    return spec_from_pattern(a2.k_xy(), bindings, margin=margin)


def _membership_job(bindings: Dict[str, str]) -> Dict[str, Any]:
    spec = a2_ansatz(bindings)
    basis = commutant_solve(a2.h_xy(), spec)
    return {
        "bindings": dict(sorted(spec.bindings.items())),
        "nullspace_dim": basis.nullspace_dim,
        "nontrivial_dim": basis.nontrivial_dim,
        "contains_h": basis.contains(a2.h_xy()),
        "contains_k": basis.contains(a2.k_xy()),
        "verified": basis.all_verified,
    }


def membership_sweep(count: int = 5, seed: Optional[int] = None,
                     workers: Optional[int] = None) -> List[Dict[str, Any]]:
    """Rediscover ``k_xy`` at ``count`` random rational bindings; solves run in parallel."""
    settings = get_settings()
    seed = settings.default_seed if seed is None else seed
    workers = settings.workers if workers is None else workers
    jobs = [{k: str(v) for k, v in b.items()} for b in random_bindings(count, seed)]
    logger.info("membership sweep", bindings=count, workers=workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_membership_job, jobs))
    return [_membership_job(job) for job in jobs]


# ----------------------------------------------------------------------
# G2 correction search
# ----------------------------------------------------------------------


@dataclass
class KmReport:
    """Outcome of solving ``[h_G2, k^2 + lam K] = 0`` for ``K``."""

    spec: AnsatzSpec
    solvable: bool
    solution: Optional[DiffOp]
    residual: float
    verified: Optional[bool]
    equations: int
    rank: int
    homogeneous_dim: int
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spec": self.spec.to_dict(),
            "bindings": dict(sorted(self.spec.bindings.items())),
            "solvable": self.solvable,
            "solution": [list(t) for t in self.solution.to_triples()] if self.solution is not None else None,
            "residual": self.residual,
            "verified": self.verified,
            "equations": self.equations,
            "rank": self.rank,
            "homogeneous_dim": self.homogeneous_dim,
            "exploratory": True,
            "notes": self.notes,
        }


def ksq_uv_at(bindings: Mapping[str, Fraction]) -> DiffOp:
    """``k o k`` on even functions in (u, v), bound before squaring."""
    k = bind(a2.k_xy(), {n: bindings[n] for n in ("tau", "mu", "nu")})
    return restrict_to_even(compose(k, k), a2.UV_BASE_MAP)


def _minimal_residual(rows: Sequence[SparseRow], ncols: int, rhs: Sequence[Fraction]) -> float:
    """``min ||A c - b|| / ||b||`` in floating point."""
    a = np.zeros((len(rows), ncols))
    for i, row in enumerate(rows):
        for j, c in row.items():
            a[i, j] = float(c)
    b = np.array([float(x) for x in rhs])
    norm = np.linalg.norm(b)
    if norm == 0:
        return 0.0
    c, *_ = np.linalg.lstsq(a, b, rcond=None)
    return float(np.linalg.norm(a @ c - b) / norm)


def find_km(lam: object, nu: object, tau: object, mu: object,
            spec: Optional[AnsatzSpec] = None, degree_bound: Optional[int] = None) -> KmReport:
    """Search ``K`` of order at most five with ``[h_G2, k^2 + lam K] = 0``.

    Default coefficient degrees are those of ``k^2`` plus one. An
    inconsistent system is a report outcome carrying the least-squares
    residual, not an error.
    """
    raw = {"tau": tau, "mu": mu, "nu": nu, "lam": lam}
    bound_spec = AnsatzSpec.uniform(Chart.UV, 0, 0, raw)
    bindings = bound_spec.rational_bindings()
    hg = bind(g2.h_g2(), bindings)
    ksq = ksq_uv_at(bindings)
    base = commutator(hg, ksq)

    if spec is None:
        if degree_bound is not None:
            spec = AnsatzSpec.uniform(Chart.UV, KM_MAX_ORDER, degree_bound, raw)
        else:
            spec = spec_from_pattern(ksq, raw, margin=1, max_order=KM_MAX_ORDER)

    if bindings["lam"] == 0:
        solvable = base.is_zero()
        logger.info("k_m search at lam = 0", solvable=solvable)
        return KmReport(
            spec, solvable, DiffOp.zero(Chart.UV) if solvable else None, 0.0 if solvable else 1.0,
            commutes(hg, ksq) if solvable else None, 0, 0, 0, ["lam = 0: k^2 alone must commute"],
        )

    count = spec.check_size()
    target = base.times(-1 / bindings["lam"])
    rows, rhs, keys = commutator_system(hg, spec, rhs=target)
    solution = solve_modular(rows, count, rhs)
    logger.info("k_m search", unknowns=count, equations=len(keys), consistent=solution.consistent)
    if not solution.consistent:
        return KmReport(
            spec, False, None, _minimal_residual(rows, count, rhs), None,
            len(keys), solution.rank, count - solution.rank,
            ["no correction within the coefficient-degree bounds"],
        )
    km = operator_from_vector(spec, solution.particular)
    verified = commutes(hg, ksq + km.times(bindings["lam"]))
    return KmReport(
        spec, True, km, 0.0, verified, len(keys), solution.rank, len(solution.basis),
        ["solution unique up to the homogeneous commutant"] if solution.basis else [],
    )
