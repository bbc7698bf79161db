"""Operators written as noncommutative words in hidden-algebra generators."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from structlog import get_logger

from src.algebra.mpoly import MPoly
from src.core.exceptions import UnknownGeneratorError
from src.models.a2 import mu, nu, sl3_generators, tau
from src.models.g2 import g2_generators
from src.operators.diffop import Chart, DiffOp, compose

logger = get_logger()

F = Fraction


@dataclass(frozen=True)
class GeneratorWord:
    """``prefactor * G_1 G_2 ... G_k``; an empty word is the identity."""

    prefactor: MPoly
    letters: Tuple[str, ...]

    @classmethod
    def of(cls, prefactor: Union[MPoly, int, Fraction], *letters: str) -> "GeneratorWord":
        return cls(MPoly.lift(prefactor), tuple(letters))

    def label(self) -> str:
        return "".join(self.letters) or "1"


def expand_word(word: GeneratorWord, generators: Dict[str, DiffOp], chart: Chart) -> DiffOp:
    result = DiffOp.identity(chart)
    for letter in word.letters:
        if letter not in generators:
            raise UnknownGeneratorError(f"unknown generator {letter}")
        result = compose(result, generators[letter])
    return result.times(word.prefactor)


def expand_generator_form(words: Sequence[GeneratorWord], algebra: str,
                          n: Optional[Union[MPoly, int, Fraction]] = None) -> DiffOp:
    """Expand a sum of generator words into a differential operator.

    ``algebra`` is ``"sl3"`` (x, y chart, spin -3 nu built into J7, J8) or
    ``"g2"`` (u, v chart, spin ``n``; defaults to ``-3 nu``).
    """
    if algebra == "sl3":
        generators, chart = sl3_generators(), Chart.XY
    elif algebra == "g2":
        generators, chart = g2_generators(-3 * nu if n is None else n), Chart.UV
    else:
        raise UnknownGeneratorError(f"unknown algebra {algebra}")
    total = DiffOp.zero(chart)
    for word in words:
        total = total + expand_word(word, generators, chart)
    logger.debug("expanded generator form", algebra=algebra, words=len(words), terms=len(total.terms))
    return total


W = GeneratorWord.of
a = 1 + 3 * nu
b = 2 + 3 * nu

# h(x, y) in the enveloping algebra of sl(3)
H_SL3_WORDS: List[GeneratorWord] = [
    W(a, "J1", "J3"),
    W(-3 * nu, "J3", "J1"),
    W(3, "J1", "J6"),
    W(3 * tau, "J3", "J3"),
    W(6 * tau * (1 - 4 * nu), "J3", "J6"),
    W(3 * (mu - tau**2), "J4", "J4"),
    W(tau * (1 + 12 * nu), "J4", "J5"),
    W(tau * (1 + 12 * nu), "J5", "J4"),
    W(2 * a * mu, "J3", "J7"),
    W(-3 * mu * tau, "J4", "J8"),
    W(-F(1, 3), "J5", "J5"),
    W(3 * tau, "J6", "J6"),
    W(4 * mu, "J6", "J7"),
    W(mu * (1 - 6 * nu), "J7", "J3"),
    W(-3 * mu**2, "J8", "J8"),
]

# k_A2 in the enveloping algebra of sl(3), word for word as published.
# The J3^3 J5 word and the J7 J3 J8 prefactor look damaged in print; the
# identity suite reports the residual instead of trusting them.
K_SL3_WORDS: List[GeneratorWord] = [
    W(1, "J1", "J1", "J4"),
    W(3 * b * tau, "J1", "J3", "J4"),
    W(-F(2, 9) * a * b, "J1", "J3", "J5"),
    W(3 * tau, "J1", "J4", "J6"),
    W(nu * b, "J1", "J5", "J3"),
    W(-3 * nu, "J1", "J6", "J5"),
    W(-(1 + 9 * nu) * tau, "J3", "J1", "J4"),
    W(F(1, 3) * (12 * mu + 12 * tau**2 - a * (11 * mu + 16 * tau**2) + a**2 * (mu + 8 * tau**2)),
      "J3", "J3", "J4"),
    W(-F(8, 9) * a * b * tau, "J3", "J3", "J3", "J5"),
    W(4 * b * (1 - 3 * nu) * mu * tau, "J3", "J3", "J8"),
    W(F(2, 3) * (3 * tau**2 + a * (5 * mu + 4 * tau**2) - a**2 * (mu + 8 * tau**2)), "J3", "J4", "J3"),
    W(mu + 8 * tau**2 + 2 * a * (mu - 4 * tau**2), "J3", "J4", "J6"),
    W(F(2, 9) * (1 + 36 * nu + 72 * nu**2) * tau, "J3", "J5", "J3"),
    W(-(1 - 3 * nu), "J3", "J6", "J2"),
    W(-F(4, 3) * (1 + 6 * nu) * tau, "J3", "J6", "J5"),
    W(2 * b * mu**2, "J3", "J7", "J8"),
    W(-4 * a * mu * tau, "J3", "J8", "J6"),
    W(F(1, 3) * a * b * (mu + 8 * tau**2), "J4", "J3", "J3"),
    W(-(mu * (1 + 6 * nu) - 2 * (5 + 12 * nu) * tau**2), "J4", "J3", "J6"),
    W(-F(4, 3) * a * b * mu * tau, "J4", "J3", "J7"),
    W(-tau * (3 * mu - 2 * tau**2), "J4", "J4", "J4"),
    W(-3 * mu * (2 * mu - tau**2), "J4", "J4", "J8"),
    W(-3 * (mu - 2 * tau**2), "J4", "J6", "J6"),
    W(2 * (7 + 6 * nu) * mu * tau, "J4", "J6", "J7"),
    W(-3 * mu**2 * tau, "J4", "J8", "J8"),
    W(-F(1, 9) * (2 + 9 * nu**2), "J5", "J3", "J1"),
    W(-F(4, 9) * (1 + 18 * nu**2) * tau, "J5", "J3", "J3"),
    W(-F(4, 3) * b * mu, "J5", "J3", "J7"),
    W(-F(2, 27), "J5", "J5", "J5"),
    W(F(2, 3) * (1 + 6 * nu) * mu, "J5", "J7", "J3"),
    W(-1, "J6", "J2", "J6"),
    W(-2 * (1 - 4 * nu) * tau, "J6", "J5", "J3"),
    W(-2 * tau, "J6", "J5", "J6"),
    W(-F(5, 3) * mu, "J6", "J5", "J7"),
    W(-F(1, 3) * mu * tau * (5 - 72 * nu**2), "J7", "J3", "J4"),
    W(-mu**2 * (1 + 6 * nu), "J7", "J3", "J8"),
    W(4 * mu**2, "J7", "J8", "J6"),
    W(12 * mu * tau, "J8", "J6", "J6"),
    W(-9 * mu * tau, "J6", "J8", "J6"),
    W(-2 * mu**3, "J8", "J8", "J8"),
]

# h_m in g(2) generators at spin -3 nu
HM_G2_WORDS: List[GeneratorWord] = [
    W(6, "J1"),
    W(-4, "R2"),
    W(6 * tau, "J2"),
    W(6 * tau, "J3"),
    W(6 * mu, "J4"),
    W(-12 * tau * nu),
]

del a, b
