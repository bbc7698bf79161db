"""Exact solution of large sparse rational systems by modular elimination.

Rows are reduced to integers, eliminated modulo word-size primes with numpy,
combined by the Chinese remainder theorem and lifted back to rationals. A
result is returned only after it satisfies the original system exactly.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from structlog import get_logger

from src.core.config import get_settings
from src.core.constants import MODULAR_PRIME_BOUND
from src.core.exceptions import NonConvergenceError

logger = get_logger()

SparseRow = Dict[int, Fraction]
IntRow = Dict[int, int]

_WITNESSES = (2, 3, 5, 7, 11)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for ``n < 2^31``."""
    if n < 2:
        return False
    for p in _WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def word_primes(start: int = MODULAR_PRIME_BOUND) -> Iterator[int]:
    """Primes below ``start`` in decreasing order."""
    n = start - 1
    while n > 2:
        if is_prime(n):
            yield n
        n -= 1


def integer_rows(rows: Sequence[SparseRow]) -> List[IntRow]:
    """Clear denominators row by row."""
    out = []
    for row in rows:
        scale = 1
        for c in row.values():
            scale = lcm(scale, c.denominator)
        out.append({j: int(c * scale) for j, c in row.items() if c})
    return out


def rref_mod(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form modulo ``p < 2^31``; entries stay below ``2^62``."""
    a = matrix % p
    nrows, ncols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        column = a[:, c].copy()
        column[r] = 0
        targets = np.nonzero(column)[0]
        if targets.size:
            a[targets] = (a[targets] - np.outer(column[targets], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _dense_mod(rows: Sequence[IntRow], ncols: int, p: int) -> np.ndarray:
    a = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, c in row.items():
            a[i, j] = c % p
    return a


def rational_reconstruct(a: int, m: int) -> Optional[Fraction]:
    """The fraction ``n/d`` with ``n = a d (mod m)`` and ``|n|, d <= sqrt(m/2)``, if any."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _crt(r1: int, m1: int, r2: int, p: int) -> int:
    t = ((r2 - r1) * pow(m1, -1, p)) % p
    return r1 + m1 * t


def _better(pivots: List[int], reference: Optional[List[int]]) -> bool:
    """Bad primes lose rank or push pivots right."""
    if reference is None:
        return True
    if len(pivots) != len(reference):
        return len(pivots) > len(reference)
    return pivots < reference


@dataclass
class ModularSolution:
    """Nullspace basis and, for inhomogeneous systems, one particular solution."""

    ncols: int
    pivots: List[int]
    free: List[int]
    basis: List[List[Fraction]] = field(default_factory=list)
    particular: Optional[List[Fraction]] = None
    consistent: bool = True
    primes_used: int = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _images(reduced: np.ndarray, pivots: List[int], ncols: int, augmented: bool, p: int) -> Tuple[List[int], List[List[int]]]:
    """Canonical nullspace vectors (free variable = 1) and the particular solution, mod p."""
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    vectors = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = int(-reduced[i, f]) % p
        vectors.append(v)
    if augmented:
        part = [0] * ncols
        for i, c in enumerate(pivots):
            part[c] = int(reduced[i, ncols])
        vectors.append(part)
    return free, vectors


def _satisfies(rows: Sequence[IntRow], rhs: Optional[Sequence[int]], vector: Sequence[Fraction]) -> bool:
    for i, row in enumerate(rows):
        total = sum((c * vector[j] for j, c in row.items() if vector[j]), Fraction(0))
        if total != (rhs[i] if rhs is not None else 0):
            return False
    return True


def solve_modular(rows: Sequence[SparseRow], ncols: int,
                  rhs: Optional[Sequence[Fraction]] = None) -> ModularSolution:
    """Exact nullspace of ``A`` and, when ``rhs`` is given, a solution of ``A c = rhs``.

    The right-hand side is carried as an extra column; the system is
    inconsistent exactly when that column carries a pivot.
    """
    augmented = rhs is not None
    full = [dict(row) for row in rows]
    if augmented:
        for row, b in zip(full, rhs):
            if b:
                row[ncols] = Fraction(b)
    int_rows = integer_rows(full)
    exact_rows = [{j: c for j, c in row.items() if j < ncols} for row in int_rows]
    exact_rhs = [row.get(ncols, 0) for row in int_rows] if augmented else None
    width = ncols + 1 if augmented else ncols
    max_primes = get_settings().discovery_max_primes
    logger.info("modular solve", rows=len(rows), unknowns=ncols, augmented=augmented)

    reference: Optional[List[int]] = None
    residues: List[List[int]] = []
    modulus = 1
    agreeing = 0
    primes = word_primes()
    for used in range(1, max_primes + 1):
        p = next(primes)
        reduced, pivots = rref_mod(_dense_mod(int_rows, width, p), p)
        if not _better(pivots, reference) and pivots != reference:
            logger.debug("unlucky prime skipped", prime=p)
            continue
        if pivots != reference:
            reference, residues, modulus, agreeing = pivots, [], 1, 0
        agreeing += 1
        consistent = not (augmented and ncols in pivots)
        if not consistent:
            # a pivot in the right-hand side column survives every lucky prime
            if agreeing >= 2:
                col_pivots = [c for c in pivots if c < ncols]
                free = [j for j in range(ncols) if j not in set(col_pivots)]
                logger.info("system inconsistent", rank=len(col_pivots), primes=used)
                return ModularSolution(ncols, col_pivots, free, consistent=False, primes_used=used)
            continue
        free, images = _images(reduced, pivots, ncols, augmented, p)
        if not residues:
            residues = [list(v) for v in images]
        else:
            residues = [[_crt(r, modulus, x, p) for r, x in zip(old, new)] for old, new in zip(residues, images)]
        modulus *= p

        lifted: List[List[Fraction]] = []
        for vector in residues:
            values = [rational_reconstruct(x, modulus) for x in vector]
            if any(v is None for v in values):
                break
            lifted.append(values)  # type: ignore[arg-type]
        else:
            basis = lifted[:-1] if augmented else lifted
            particular = lifted[-1] if augmented else None
            if all(_satisfies(exact_rows, None, v) for v in basis) and (
                particular is None or _satisfies(exact_rows, exact_rhs, particular)
            ):
                logger.info("modular solve finished", rank=len(pivots), nullity=len(basis), primes=used)
                return ModularSolution(ncols, list(pivots), free, basis, particular, True, used)
    raise NonConvergenceError(f"rational reconstruction did not stabilise after {max_primes} primes")
