"""Fraction-free linear algebra over Q[tau, mu, lam].

Matrices are lists of rows of ``MPoly``. Elimination follows Bareiss: every
division is exact, so entries stay polynomial and zero tests are exact.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from structlog import get_logger

from src.algebra.mpoly import MPoly

logger = get_logger()

Matrix = List[List[MPoly]]


def lift_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[MPoly.lift(c) for c in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[MPoly.one() if i == j else MPoly.zero() for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = MPoly.zero()
            for k in range(inner):
                if row[k] and b[k][j]:
                    acc = acc + row[k] * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def is_zero_matrix(a: Matrix) -> bool:
    return all(c.is_zero() for row in a for c in row)


def _exact(p: MPoly, d: MPoly) -> MPoly:
    if d == 1:
        return p
    q = p.exact_div(d)
    if q is None:
        raise ArithmeticError("Bareiss step is not exact")
    return q


def echelon(rows: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Fraction-free row echelon form and the pivot columns."""
    m = [list(r) for r in lift_matrix(rows)]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: List[int] = []
    previous = MPoly.one()
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # sparsest non-zero pivot keeps intermediate polynomials small
        candidates = [i for i in range(r, nrows) if not m[i][c].is_zero()]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: m[i][c].nterms)
        m[r], m[p] = m[p], m[r]
        pivot = m[r][c]
        for i in range(r + 1, nrows):
            factor = m[i][c]
            for j in range(c + 1, ncols):
                m[i][j] = _exact(pivot * m[i][j] - factor * m[r][j], previous)
            m[i][c] = MPoly.zero()
        # rows above keep their scale; rows below are now minors of order r + 1
        previous = pivot
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(echelon(rows)[1])


def kernel(rows: Sequence[Sequence], ncols: Optional[int] = None) -> List[List[MPoly]]:
    """Basis of the right null space, one vector per free column.

    Pivot coordinates are solved by back substitution scaled by the product
    of the pivots, which keeps them polynomial. Rational vectors are made
    primitive integral.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[MPoly.one() if i == j else MPoly.zero() for i in range(ncols)] for j in range(ncols)]
    m, pivots = echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    scale = MPoly.one()
    for r, c in enumerate(pivots):
        scale = scale * m[r][c]
    basis = []
    for f in free:
        x = [MPoly.zero()] * ncols
        x[f] = scale
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            acc = MPoly.zero()
            for j in range(c + 1, ncols):
                if m[r][j] and x[j]:
                    acc = acc + m[r][j] * x[j]
            x[c] = _exact(-acc, m[r][c])
        basis.append(_primitive(x))
    logger.debug("kernel computed", columns=ncols, rank=len(pivots), nullity=len(free))
    return basis


def _primitive(vector: List[MPoly]) -> List[MPoly]:
    """Scale a constant vector to coprime integers with a positive lead."""
    if not all(v.is_constant() for v in vector):
        return vector
    values = [Fraction(v.constant_term()) for v in vector]
    nonzero = [v for v in values if v]
    if not nonzero:
        return vector
    den = lcm(*(v.denominator for v in nonzero))
    ints = [int(v * den) for v in values]
    g = 0
    for i in ints:
        g = gcd(g, i)
    sign = -1 if next(i for i in ints if i) < 0 else 1
    return [MPoly.const(sign * i // g) for i in ints]


def determinant(rows: Sequence[Sequence]) -> MPoly:
    """Determinant by Bareiss elimination; the last pivot carries it up to the swap sign."""
    m = [list(r) for r in lift_matrix(rows)]
    n = len(m)
    if n == 0:
        return MPoly.one()
    sign = 1
    previous = MPoly.one()
    for k in range(n):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return MPoly.zero()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], previous)
            m[i][k] = MPoly.zero()
        previous = m[k][k]
    return m[n - 1][n - 1] * sign
