"""Guessing closed forms for the levels of a sequence of corrections.

Each level sequence (lam_j and the coefficients of Phi_j) is fitted by a
rational function of j through exact interpolation, then checked on levels
held out of the fit.  This is a heuristic: a returned rule reproduces the
data, nothing more.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import LinearSystemError
from ..exact import Polynomial, RationalFunction, as_fraction, solve_linear
from .engine import CorrectionFunction
from .term import VAR

LEVEL = "j"
MAX_DEGREE = 6
HOLDOUT = 2
_M = Polynomial.var(VAR)


def fit_rational(xs: Sequence, ys: Sequence, var: str = LEVEL, max_degree: int = MAX_DEGREE,
                 holdout: int = HOLDOUT) -> RationalFunction | None:
    """Lowest-complexity N(x)/D(x) through all points, fitted on a prefix.

    Degrees of N and D are at most max_degree; at least `holdout` points are
    never used in the fit and only serve to confirm it.  D is taken monic.
    """
    xs = [as_fraction(x) for x in xs]
    ys = [as_fraction(y) for y in ys]
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    budget = len(xs) - holdout
    x_var = Polynomial.var(var)
    for total in range(0, 2 * max_degree + 1):
        for q in range(0, min(total, max_degree) + 1):
            p = total - q
            if p > max_degree or p + q + 1 > budget:
                continue
            cand = _solve_fit(xs[: p + q + 1], ys[: p + q + 1], p, q, x_var)
            if cand is not None and _matches(cand, xs, ys, var):
                return cand
    return None


def _solve_fit(xs, ys, p, q, x_var):
    # unknowns n_0..n_p, d_0..d_{q-1};  N(x) - y D(x) = 0 with d_q = 1
    matrix, rhs = [], []
    for x, y in zip(xs, ys):
        row = [x**i for i in range(p + 1)] + [-y * x**i for i in range(q)]
        matrix.append(row)
        rhs.append(y * x**q)
    try:
        sol = solve_linear(matrix, rhs)
    except LinearSystemError:
        return None
    num = sum((c * x_var**i for i, c in enumerate(sol[: p + 1])), Polynomial())
    den = sum((c * x_var**i for i, c in enumerate(sol[p + 1:])), Polynomial()) + x_var**q
    return RationalFunction(num, den)


def _matches(rf, xs, ys, var):
    for x, y in zip(xs, ys):
        d = rf.den.evaluate({var: x})
        if d == 0 or rf.num.evaluate({var: x}) / d != y:
            return False
    return True


def _complexity(rf: RationalFunction, var: str) -> int:
    return max(rf.num.degree(var), 0) + rf.den.degree(var) + 1


@dataclass(frozen=True)
class PatternRule:
    """Levels j >= start follow lam(j) / Phi(j; m); earlier levels are listed explicitly.

    lam and the Phi coefficients are rational functions of j and possibly of
    parameters; phi_coeffs[d] multiplies m**d, the top one being 1.
    """

    poly_part: RationalFunction
    start: int
    early: tuple           # ((lam, Phi as RationalFunction in m), ...) for j < start
    lam: RationalFunction
    phi_coeffs: tuple
    params: tuple = ()

    @property
    def degree(self) -> int:
        return len(self.phi_coeffs) - 1

    def phi(self) -> RationalFunction:
        """Phi_j(m) as a rational function of m, j and the parameters."""
        m = RationalFunction(_M)
        out = RationalFunction(Polynomial())
        for d, c in enumerate(self.phi_coeffs):
            out = out + c * m**d
        return out

    def level(self, j: int, bindings: Mapping | None = None):
        """(lam_j, Phi_j) at numeric parameters."""
        env = {k: as_fraction(v) for k, v in (bindings or {}).items()}
        if j < self.start:
            lam, phi = self.early[j]
            return lam.evaluate(env), _as_poly(phi.subs(env))
        env[LEVEL] = Fraction(j)
        return self.lam.evaluate(env), _as_poly(self.phi().subs(env))

    def regenerate(self, count: int, bindings: Mapping | None = None) -> CorrectionFunction:
        env = {k: as_fraction(v) for k, v in (bindings or {}).items()}
        poly = _as_poly(self.poly_part.subs(env)) if not self.poly_part.is_zero() else Polynomial()
        return CorrectionFunction(poly, tuple(self.level(j, env) for j in range(count)))

    def __str__(self):
        parts = []
        if not self.poly_part.is_zero():
            parts.append(f"polynomial part {self.poly_part}")
        for j, (lam, phi) in enumerate(self.early):
            parts.append(f"level {j}: lambda = {lam}, Phi = {phi}")
        tail = f"j >= {self.start}: " if self.start else "all j: "
        parts.append(f"{tail}lambda_j = {self.lam}, Phi_j = {self.phi()}")
        return "; ".join(parts)

    def to_json(self):
        return {"poly": str(self.poly_part), "start": self.start,
                "early": [{"lambda": str(lam), "phi": str(phi)} for lam, phi in self.early],
                "lambda": str(self.lam), "phi": str(self.phi()), "params": list(self.params)}


def _as_poly(rf: RationalFunction) -> Polynomial:
    if not rf.is_polynomial():
        raise ValueError(f"{rf} is not a polynomial")
    return rf.num.scale(1 / rf.den.const_value())


def _aligned(corrections) -> bool:
    for a, b in zip(corrections, corrections[1:]):
        if a.poly_part != b.poly_part or b.levels[: len(a.levels)] != a.levels:
            return False
    return True


def guess_pattern(corrections: Sequence[CorrectionFunction], max_degree: int = MAX_DEGREE,
                  holdout: int = HOLDOUT, max_start: int = 2) -> PatternRule | None:
    """Rule for the levels of nested corrections MC_0, MC_1, ..., or None.

    Start offsets 0..max_start are tried; the rule minimizing
    start + sum of fit complexities wins.
    """
    corrections = list(corrections)
    if len(corrections) < 4 or not _aligned(corrections):
        return None
    levels = corrections[-1].levels
    poly = RationalFunction(corrections[-1].poly_part)
    best = None
    for start in range(0, max_start + 1):
        tail = levels[start:]
        if len(tail) < holdout + 1:
            break
        kappa = tail[0][1].degree(VAR)
        if any(phi.degree(VAR) != kappa for _, phi in tail):
            continue
        js = list(range(start, len(levels)))
        lam = fit_rational(js, [lam for lam, _ in tail], LEVEL, max_degree, holdout)
        if lam is None:
            continue
        coeffs, cost = [], start + _complexity(lam, LEVEL)
        for d in range(kappa):
            ys = [_coeff(phi, d) for _, phi in tail]
            c = fit_rational(js, ys, LEVEL, max_degree, holdout)
            if c is None:
                break
            coeffs.append(c)
            cost += _complexity(c, LEVEL)
        else:
            coeffs.append(RationalFunction.const(1))
            if best is None or cost < best[0]:
                early = tuple((RationalFunction.const(l), RationalFunction(p)) for l, p in levels[:start])
                best = (cost, PatternRule(poly, start, early, lam, tuple(coeffs)))
    return best[1] if best else None


def _coeff(phi: Polynomial, d: int) -> Fraction:
    cs = phi.univariate_coeffs(VAR)
    return cs[d] if d < len(cs) else Fraction(0)


# -- fitting across parameter bindings --------------------------------------

def _slots(rule: PatternRule):
    """Flatten a numeric rule into named rational slots; None if not numeric."""
    out = {}

    def put(key, rf: RationalFunction, var):
        num = rf.num.univariate_coeffs(var) if rf.num.vars else ([rf.num.const_value()] if not rf.is_zero() else [])
        den = rf.den.univariate_coeffs(var) if rf.den.vars else [rf.den.const_value()]
        for d, c in enumerate(num):
            out[key + ("num", d)] = c
        for d, c in enumerate(den):
            out[key + ("den", d)] = c

    put(("poly",), rule.poly_part, VAR)
    for i, (lam, phi) in enumerate(rule.early):
        put(("early", i, "lam"), lam, VAR)
        put(("early", i, "phi"), phi, VAR)
    put(("lam",), rule.lam, LEVEL)
    for d, c in enumerate(rule.phi_coeffs):
        put(("phi", d), c, LEVEL)
    return out


def _rebuild(key_prefix, slots, var):
    v = RationalFunction.var(var)
    parts = {"num": RationalFunction.const(0), "den": RationalFunction.const(0)}
    n = len(key_prefix)
    for key, val in slots.items():
        if key[:n] == key_prefix:
            parts[key[n]] = parts[key[n]] + val * v ** key[n + 1]
    if parts["den"].is_zero():
        return parts["num"]
    return parts["num"] / parts["den"]


def guess_parametric(rules: Mapping[object, PatternRule], param: str,
                     max_degree: int = MAX_DEGREE) -> PatternRule | None:
    """Lift per-binding rules (keyed by the parameter's value) to one symbolic rule.

    Every rule must have the same shape; each coefficient is then fitted as a
    rational function of the parameter, keeping one binding in reserve.
    Needs at least three bindings.
    """
    if len(rules) < 3 or any(r is None for r in rules.values()):
        return None
    values = [as_fraction(k) for k in rules]
    shapes = [r for r in rules.values()]
    first = shapes[0]
    if any(r.start != first.start or r.degree != first.degree for r in shapes):
        return None
    flat = [_slots(r) for r in shapes]
    keys = set().union(*flat)
    lifted = {}
    for key in sorted(keys, key=repr):
        ys = [f.get(key, Fraction(0)) for f in flat]
        fit = fit_rational(values, ys, param, max_degree, holdout=1)
        if fit is None:
            return None
        lifted[key] = fit
    poly = _rebuild(("poly",), lifted, VAR)
    early = tuple((_rebuild(("early", i, "lam"), lifted, VAR), _rebuild(("early", i, "phi"), lifted, VAR))
                  for i in range(first.start))
    lam = _rebuild(("lam",), lifted, LEVEL)
    coeffs = tuple(_rebuild(("phi", d), lifted, LEVEL) for d in range(first.degree + 1))
    rule = PatternRule(poly, first.start, early, lam, coeffs, (param,))
    for k, r in rules.items():
        n = r.start + 3
        if rule.regenerate(n, {param: k}) != r.regenerate(n):
            return None
    return rule
