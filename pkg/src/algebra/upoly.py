"""Dense univariate polynomials over the rationals.

A polynomial is a list of coefficients, highest degree first, with no
leading zeros; ``[]`` is the zero polynomial.
"""

from fractions import Fraction
from typing import List, Sequence, Tuple

UPoly = List[Fraction]


def trim(p: Sequence) -> UPoly:
    out = [Fraction(c) for c in p]
    while out and out[0] == 0:
        out.pop(0)
    return out


def degree(p: Sequence) -> int:
    return len(p) - 1


def add(p: Sequence, q: Sequence) -> UPoly:
    n = max(len(p), len(q))
    a = [Fraction(0)] * (n - len(p)) + list(p)
    b = [Fraction(0)] * (n - len(q)) + list(q)
    return trim(x + y for x, y in zip(a, b))


def sub(p: Sequence, q: Sequence) -> UPoly:
    return add(p, [-c for c in q])


def mul(p: Sequence, q: Sequence) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def product(factors: Sequence[Sequence]) -> UPoly:
    result: UPoly = [Fraction(1)]
    for f in factors:
        result = mul(result, f)
    return result


def divmod_(p: Sequence, q: Sequence) -> Tuple[UPoly, UPoly]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = trim(p)
    if len(rem) < len(q):
        return [], rem
    quot = [Fraction(0)] * (len(rem) - len(q) + 1)
    lead = q[0]
    for i in range(len(quot)):
        c = rem[i] / lead
        quot[i] = c
        if c:
            for j, b in enumerate(q):
                rem[i + j] -= c * b
    return trim(quot), trim(rem[len(quot):])


def exact_quotient(p: Sequence, q: Sequence) -> UPoly:
    quot, rem = divmod_(p, q)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quot


def monic(p: Sequence) -> UPoly:
    p = trim(p)
    return [c / p[0] for c in p] if p else []


def gcd(p: Sequence, q: Sequence) -> UPoly:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def derivative(p: Sequence) -> UPoly:
    n = len(p) - 1
    return trim(c * (n - i) for i, c in enumerate(p[:-1]))


def evaluate(p: Sequence, value):
    acc = 0
    for c in p:
        acc = acc * value + c
    return acc


def squarefree_decomposition(p: Sequence) -> List[Tuple[UPoly, int]]:
    """Yun's algorithm: ``monic(p) = prod f_i**i`` with each ``f_i`` squarefree."""
    p = monic(p)
    if len(p) <= 1:
        return []
    out: List[Tuple[UPoly, int]] = []
    dp = derivative(p)
    a = gcd(p, dp)
    b = exact_quotient(p, a)
    c = exact_quotient(dp, a)
    d = sub(c, derivative(b))
    i = 1
    while len(b) > 1:
        f = gcd(b, d)
        b = exact_quotient(b, f)
        c = exact_quotient(d, f)
        d = sub(c, derivative(b))
        if len(f) > 1:
            out.append((f, i))
        i += 1
    return out


def to_string(p: Sequence, var: str = "E") -> str:
    p = trim(p)
    if not p:
        return "0"
    n = len(p) - 1
    parts = []
    for i, c in enumerate(p):
        if not c:
            continue
        e = n - i
        mag = abs(c)
        text = "" if (mag == 1 and e) else (str(mag.numerator) if mag.denominator == 1 else str(mag))
        power = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        body = f"{text}*{power}" if text and power else (text or power)
        parts.append(("- " if c < 0 else "+ ") + body)
    head = parts[0]
    return (("-" + head[2:]) if head.startswith("-") else head[2:]) + "".join(" " + s for s in parts[1:])
