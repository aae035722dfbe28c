"""Exact arithmetic: rationals, polynomials, rational functions, linear algebra."""
from .identity import verify_identity
from .linalg import mat_vec, solve_linear, solve_pinned
from .parse import parse_rf
from .polynomial import NEG_INF, ONE, ZERO, Polynomial, exact_div, gcd
from .rational import as_fraction, format_decimal, fraction_str, parse_rational, to_decimal
from .ratfunc import RationalFunction, as_rf, simplify

__all__ = [
    "NEG_INF", "ONE", "ZERO", "Polynomial", "RationalFunction",
    "as_fraction", "as_rf", "exact_div", "format_decimal", "fraction_str", "gcd",
    "mat_vec", "parse_rational", "parse_rf", "simplify", "solve_linear", "solve_pinned",
    "to_decimal", "verify_identity",
]
