"""Deterministic identity testing for rational functions."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping

from ..errors import PoleError
from .ratfunc import RationalFunction, as_rf
from .polynomial import sort_vars

_MAX_SHIFTS = 32


def _grid_offset(i: int) -> Fraction:
    # non-integer, distinct per variable, so integer-located poles are rare
    return Fraction(1, 3) + Fraction(i, 7)


def verify_identity(f, g, degree_bounds: Mapping[str, int] | None = None) -> bool:
    """True iff f == g as rational functions.

    With degree bounds, f - g is evaluated on a tensor grid with bound + 1
    points per variable; the bound must dominate the degree of the
    cross-multiplied numerator num(f)den(g) - num(g)den(f) in that variable.
    Grid points that hit a pole shift that variable's grid by one.  Without
    bounds the canonical forms are compared.
    """
    f, g = as_rf(f), as_rf(g)
    if degree_bounds is None:
        return f == g
    if any(b < 0 for b in degree_bounds.values()):
        raise ValueError("degree bounds must be non-negative")
    variables = sort_vars(f.vars + g.vars)
    bounds = {}
    for v in variables:
        if v in degree_bounds:
            bounds[v] = degree_bounds[v]
        else:
            bounds[v] = max(f.num.degree(v) + g.den.degree(v), g.num.degree(v) + f.den.degree(v), 0)
    shifts = {v: 0 for v in variables}
    for _ in range(_MAX_SHIFTS):
        axes = [[_grid_offset(i) + shifts[v] + j for j in range(bounds[v] + 1)]
                for i, v in enumerate(variables)]
        try:
            for point in itertools.product(*axes):
                env = dict(zip(variables, point))
                if f.evaluate(env) != g.evaluate(env):
                    return False
            return True
        except PoleError as exc:
            # shift every axis that could host the pole; deterministic
            bad = _pole_variables(exc, f, g, variables)
            for v in bad:
                shifts[v] += bounds[v] + 1
    raise PoleError("could not find a pole-free evaluation grid")


def _pole_variables(exc, f: RationalFunction, g: RationalFunction, variables):
    return [v for v in variables if v in f.den.vars or v in g.den.vars] or list(variables)


def identically_equal(f, g) -> bool:
    return as_rf(f) == as_rf(g)
