"""Generalized continued fractions: specification, evaluation and transforms."""
from .evaluate import (
    AdaptiveResult, ApproximantPair, adaptive_value, approximants, classical_value,
    determinant_check, max_depth_from_env, raw_state, tail_error_bound, value_at_depth,
)
from .spec import INDEX, BoundCF, CFSpec, ModifyingSequence, at_index
from .transforms import PhiFamily, bauer_muir, equivalence_transform, even_part, phi_rule, phi_value

__all__ = [
    "AdaptiveResult", "ApproximantPair", "BoundCF", "CFSpec", "INDEX", "ModifyingSequence",
    "PhiFamily", "adaptive_value", "approximants", "at_index", "bauer_muir", "classical_value",
    "determinant_check", "equivalence_transform", "even_part", "max_depth_from_env",
    "phi_rule", "phi_value", "raw_state", "tail_error_bound", "value_at_depth",
]
