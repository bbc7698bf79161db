"""Model catalog: one constructor per model tag."""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Union

from src.algebra.mpoly import MPoly
from src.algebra.ratfn import FactoredRatFn
from src.core.exceptions import ConfigError, UnknownModelError
from src.models import a2, g2
from src.models.words import H_SL3_WORDS, HM_G2_WORDS, K_SL3_WORDS, expand_generator_form
from src.operators.diffop import DiffOp

Built = Union[DiffOp, MPoly, FactoredRatFn]


class ModelTag(str, Enum):
    V_A2 = "V_A2"
    DET_D = "Det_D"
    LAPLACE_BELTRAMI = "LaplaceBeltrami"
    H_ALG_XY = "H_alg_XY"
    H_ALG_UV = "H_alg_UV"
    SL3_GEN = "Sl3Gen"
    H_FROM_SL3 = "H_from_sl3"
    K_A2_XY = "K_A2_XY"
    K_FROM_SL3 = "K_from_sl3"
    G2_GEN = "G2Gen"
    H_M_UV = "H_m_UV"
    H_M_FROM_G2 = "H_m_from_g2"
    H_G2_UV = "H_G2_UV"
    IPAR_XY = "IparXY"
    IPAR_UV = "IparUV"
    E0_SCALAR = "E0_scalar"
    G2_POTENTIAL_NUMERATOR = "G2PotentialNumerator"


@dataclass(frozen=True)
class ModelId:
    """A catalog entry; ``index`` selects the generator for Sl3Gen (1..8) and G2Gen (name)."""

    tag: ModelTag
    index: Optional[Union[int, str]] = None

    @classmethod
    def parse(cls, text: str) -> "ModelId":
        """Parse ``"K_A2_XY"``, ``"Sl3Gen(7)"`` or ``"G2Gen(T1)"``."""
        name, _, rest = text.partition("(")
        try:
            tag = ModelTag(name.strip())
        except ValueError as e:
            raise UnknownModelError(f"unknown model tag {text!r}") from e
        if not rest:
            return cls(tag)
        arg = rest.rstrip(")").strip()
        return cls(tag, int(arg) if arg.isdigit() else arg)


_SIMPLE: Dict[ModelTag, Callable[[], Built]] = {
    ModelTag.V_A2: a2.potential,
    ModelTag.DET_D: lambda: a2.D,
    ModelTag.LAPLACE_BELTRAMI: a2.laplace_beltrami,
    ModelTag.H_ALG_XY: a2.h_xy,
    ModelTag.H_ALG_UV: a2.h_uv,
    ModelTag.H_FROM_SL3: lambda: expand_generator_form(H_SL3_WORDS, "sl3"),
    ModelTag.K_A2_XY: a2.k_xy,
    ModelTag.K_FROM_SL3: lambda: expand_generator_form(K_SL3_WORDS, "sl3"),
    ModelTag.H_M_UV: g2.h_m,
    ModelTag.H_M_FROM_G2: lambda: expand_generator_form(HM_G2_WORDS, "g2"),
    ModelTag.H_G2_UV: g2.h_g2,
    ModelTag.E0_SCALAR: a2.E0,
    ModelTag.G2_POTENTIAL_NUMERATOR: lambda: g2.N_UV,
}


def build(model: Union[ModelId, ModelTag, str], n: Optional[int] = None) -> Built:
    """Construct the operator or scalar named by ``model``.

    ``n`` is required for the particular integrals and is the g(2) spin for
    G2Gen (default ``-3 nu``).
    """
    if isinstance(model, str) and not isinstance(model, ModelTag):
        model = ModelId.parse(model)
    if isinstance(model, ModelTag):
        model = ModelId(model)
    tag = model.tag
    if tag in _SIMPLE:
        return _SIMPLE[tag]()
    if tag is ModelTag.SL3_GEN:
        if not isinstance(model.index, int) or not 1 <= model.index <= 8:
            raise UnknownModelError(f"Sl3Gen needs an index 1..8, got {model.index!r}")
        return a2.sl3_generator(model.index)
    if tag is ModelTag.G2_GEN:
        if model.index not in g2.G2_GENERATORS:
            raise UnknownModelError(f"G2Gen needs one of {g2.G2_GENERATORS}, got {model.index!r}")
        return g2.g2_generator(str(model.index), -3 * a2.nu if n is None else n)
    if tag in (ModelTag.IPAR_XY, ModelTag.IPAR_UV):
        if n is None or n < 0:
            raise UnknownModelError(f"{tag.value} needs a non-negative n")
        return a2.ipar_xy(n) if tag is ModelTag.IPAR_XY else g2.ipar_uv(n)
    raise UnknownModelError(f"no constructor for {tag.value}")


LIMITS: Dict[str, Dict[str, int]] = {
    "rational": {"tau": 0, "mu": 0},
    "trigonometric": {"mu": 0},
}


def limit_operator(op: DiffOp, kind: str) -> DiffOp:
    """Rational (tau = mu = 0) or trigonometric (mu = 0) degeneration of ``op``.

    Operators with a denominator built on D are refused, since D itself
    depends on tau and mu.
    """
    if kind not in LIMITS:
        raise ConfigError(f"unknown limit {kind!r}; expected one of {sorted(LIMITS)}")
    return op.subs(LIMITS[kind]).reduce()
