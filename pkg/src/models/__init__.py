"""Operators and scalars of the A2 and G2 elliptic models."""

from src.models.catalog import ModelId, ModelTag, build, limit_operator
from src.models.words import GeneratorWord, expand_generator_form

__all__ = ["ModelId", "ModelTag", "build", "limit_operator", "GeneratorWord", "expand_generator_form"]
