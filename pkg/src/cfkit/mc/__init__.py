"""Correction functions for first-order difference equations of series tails."""
from .engine import (KAPPA_BOUNDS, POLY_DEGREE_CAP, CorrectionFunction, EngineRun, TestError,
                     correction_error, extend_correction, formal_solution, initial_correction,
                     leading_search, run_engine, test_error)
from .pattern import PatternRule, fit_rational, guess_parametric, guess_pattern
from .series import PrecisionLost, Series
from .term import BoundTerm, DifferenceEquation, RamanujanTerm, quasi_term, term_ratio

__all__ = [
    "KAPPA_BOUNDS", "POLY_DEGREE_CAP", "BoundTerm", "CorrectionFunction", "DifferenceEquation",
    "EngineRun", "PatternRule", "PrecisionLost", "RamanujanTerm", "Series", "TestError", "correction_error",
    "extend_correction", "fit_rational", "formal_solution", "guess_parametric", "guess_pattern", "initial_correction", "leading_search", "quasi_term",
    "run_engine", "term_ratio", "test_error",
]
