"""Correction functions for X_m - a(m) X_{m+1} = b(m).

A correction MC_k(m) is a polynomial plus a finite continued fraction with
constant numerators over monic polynomials in m.  The engine works with the
formal solution of the difference equation as a Laurent series in u = 1/m:
its polynomial part and the successive levels of its continued-fraction
expansion are exactly the terms that make the defect
MC_k(m) - a(m) MC_k(m+1) - b(m) vanish to the highest possible order.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..errors import (DomainError, ExtensionFailedError, InconsistentSystemError,
                      UnsupportedEquationError)
from ..exact import Polynomial, RationalFunction, solve_pinned
from ..exact.rational import fraction_str, to_decimal
from .series import PrecisionLost, Series
from .term import VAR, DifferenceEquation, RamanujanTerm

KAPPA_BOUNDS = (-5, 10)
POLY_DEGREE_CAP = 6
MAX_PRECISION = 512
_M = Polynomial.var(VAR)

HARMONIC_HINT = ("no rational-type correction exists: the leading defect cannot be cancelled "
                 "by any c*m^(-kappa); the tail probably grows or decays logarithmically "
                 "(as for X_m - X_(m+1) = 1/(m+1))")


# -- correction functions --------------------------------------------------

@dataclass(frozen=True)
class CorrectionFunction:
    """poly_part(m) + lam_0/(Phi_0(m) + lam_1/(Phi_1(m) + ...))."""

    poly_part: Polynomial = field(default_factory=Polynomial)
    levels: tuple = ()

    def __post_init__(self):
        levels = []
        for lam, phi in self.levels:
            lam = Fraction(lam)
            if lam == 0:
                raise ValueError("level numerators must be nonzero")
            if phi.vars not in ((VAR,),) or phi.degree(VAR) < 1:
                raise ValueError(f"level denominators must be polynomials in {VAR} of degree >= 1")
            if phi.leading_coeff(VAR).const_value() != 1:
                raise ValueError("level denominators must be monic")
            levels.append((lam, phi))
        object.__setattr__(self, "levels", tuple(levels))
        if self.poly_part.vars not in ((), (VAR,)):
            raise ValueError(f"polynomial part must be a polynomial in {VAR}")

    @property
    def depth(self) -> int:
        return len(self.levels)

    def truncate(self, count: int) -> "CorrectionFunction":
        return CorrectionFunction(self.poly_part, self.levels[:count])

    def append(self, lam, phi) -> "CorrectionFunction":
        return CorrectionFunction(self.poly_part, self.levels + ((Fraction(lam), phi),))

    def as_rf(self) -> RationalFunction:
        out = RationalFunction(self.poly_part)
        if not self.levels:
            return out
        acc = RationalFunction(self.levels[-1][1])
        for j in range(len(self.levels) - 2, -1, -1):
            acc = RationalFunction(self.levels[j][1]) + RationalFunction.const(self.levels[j + 1][0]) / acc
        return out + RationalFunction.const(self.levels[0][0]) / acc

    def evaluate(self, m) -> Fraction:
        """Bottom-up evaluation at a rational point."""
        env = {VAR: Fraction(m)}
        base = self.poly_part.evaluate(env)
        if not self.levels:
            return base
        acc = self.levels[-1][1].evaluate(env)
        for j in range(len(self.levels) - 2, -1, -1):
            acc = self.levels[j][1].evaluate(env) + self.levels[j + 1][0] / acc
        return base + self.levels[0][0] / acc

    def __str__(self):
        if not self.levels:
            return str(self.poly_part) if not self.poly_part.is_zero() else "0"
        tail = ""
        for j in range(len(self.levels) - 1, -1, -1):
            phi = str(self.levels[j][1])
            tail = f"({_join(phi, self.levels[j + 1][0], tail)})" if tail else f"({phi})"
        lam0 = self.levels[0][0]
        if self.poly_part.is_zero():
            return f"{'-' if lam0 < 0 else ''}{_num(abs(lam0))}/{tail}"
        return _join(str(self.poly_part), lam0, tail)

    def to_json(self):
        def coeffs(p):
            return [fraction_str(c) for c in (p.univariate_coeffs(VAR) if not p.is_zero() else [])]

        return {"poly": coeffs(self.poly_part),
                "levels": [{"lambda": fraction_str(lam), "phi": coeffs(phi)} for lam, phi in self.levels]}

    @classmethod
    def from_json(cls, data) -> "CorrectionFunction":
        def poly(cs):
            return Polynomial.from_coeffs([Fraction(c) for c in cs], VAR)

        return cls(poly(data.get("poly", [])),
                   tuple((Fraction(d["lambda"]), poly(d["phi"])) for d in data.get("levels", [])))


@dataclass(frozen=True)
class TestError:
    """T = MC(m) - a(m) MC(m+1) - b(m) ~ -C / m**K0 as m -> infinity."""

    __test__ = False  # not a pytest class

    T: RationalFunction
    decay_order: float   # K0; math.inf when T vanishes identically
    leading_constant: Fraction

    @property
    def degree(self):
        """deg_m T = -K0 (-inf for T = 0)."""
        return -self.decay_order

    @property
    def exact(self) -> bool:
        return self.T.is_zero()


# -- helpers ------------------------------------------------------------

def _join(head: str, lam: Fraction, tail: str) -> str:
    """head +/- |lam|/tail; tail is empty for the innermost level."""
    if not tail:
        return head
    sign = " - " if lam < 0 else " + "
    return f"{head}{sign}{_num(abs(lam))}/{tail}"


def _num(x: Fraction) -> str:
    return fraction_str(x) if x.denominator == 1 else f"({fraction_str(x)})"


def _require_numeric(deq: DifferenceEquation):
    if deq.params:
        raise DomainError(f"bind the parameters {', '.join(deq.params)} before running the engine")


def _poly_series(p: Polynomial, prec: int) -> Series:
    if p.is_zero():
        return Series(prec, [])
    cs = p.univariate_coeffs(VAR)
    d = len(cs) - 1
    return Series(-d, [cs[d - i] if i <= d else 0 for i in range(prec + d)])


def leading_search(deq: DifferenceEquation, kappa_bounds=KAPPA_BOUNDS):
    """Search kappa for the best leading guess lam * m**(-kappa).

    With D_kappa(m) = m**(-kappa) - a(m)(m+1)**(-kappa), the guess improves the
    defect only when deg D_kappa = deg b; then lam = lead(b)/lead(D_kappa).
    Among improving kappa the smallest resulting defect degree wins, ties to
    the smaller kappa.  Returns (kappa, lam, defect_degree).
    """
    _require_numeric(deq)
    rhs, ratio = deq.rhs, deq.ratio
    if rhs.is_zero():
        return None
    target = rhs.degree(VAR)
    best = None
    lo, hi = kappa_bounds
    m = RationalFunction.var(VAR)
    for kappa in range(lo, hi + 1):
        d = m ** (-kappa) - ratio * (m + 1) ** (-kappa)
        if d.is_zero() or d.degree(VAR) != target:
            continue
        lam = (rhs.leading_ratio(VAR) / d.leading_ratio(VAR)).const_value()
        defect = (rhs - RationalFunction.const(lam) * d).degree(VAR)
        if best is None or defect < best[2]:
            best = (kappa, lam, defect)
    if best is None:
        raise UnsupportedEquationError(HARMONIC_HINT)
    return best


def _shift(ratio_series: Series, ratio_zero: bool) -> int:
    """Order offset s with ord L(u^i) = i + s for the operator L X = X - a X(m+1)."""
    if ratio_zero:
        return 0
    ja = ratio_series.order
    if ja > 0:
        return 0
    if ja < 0:
        return ja
    return 1 if ratio_series.coeff(0) == 1 else 0


@lru_cache(maxsize=256)
def formal_solution(deq: DifferenceEquation, prec: int) -> Series:
    """Laurent-series solution X = sum_i c_i u**i known through u**(prec-1).

    Coefficients come from one square linear system: the coefficient of each
    power of u in L(sum c_i u^i) must equal that of the right-hand side.
    Resonant (free) columns are pinned to zero; an inconsistent system means
    no series solution exists.
    """
    _require_numeric(deq)
    if deq.rhs.is_zero():
        return Series(prec, [])
    ratio_zero = deq.ratio.is_zero()
    probe = Series.from_rf(deq.ratio, 4) if not ratio_zero else None
    s = _shift(probe, ratio_zero)
    rhs_order = deq.rhs.degree(VAR) * -1
    i0 = rhs_order - s
    n = prec - i0
    if n <= 0:
        return Series(prec, [])
    top = prec + s  # equations for orders i0+s .. prec+s-1
    need = top - i0 + 2
    a = None if ratio_zero else Series.from_rf(deq.ratio, need + max(0, -probe.order) + 2)
    b = Series.from_rf(deq.rhs, top)
    columns = []
    for i in range(i0, prec):
        col = Series.monomial(i, top + 2)
        if a is not None:
            col = col - a * col.shift_m()
        columns.append(col)
    rows = range(i0 + s, top)
    matrix = [[col.coeff(e) for col in columns] for e in rows]
    rhs = [b.coeff(e) for e in rows]
    try:
        x, _free = solve_pinned(matrix, rhs)
    except InconsistentSystemError as exc:
        raise UnsupportedEquationError(HARMONIC_HINT) from exc
    return Series(i0, x)


def _level_from(g: Series, kappa_bounds):
    """(lam, Phi, next remainder) for g = lam/(Phi + next)."""
    kappa = g.order
    if kappa < 1:
        raise ExtensionFailedError(f"remainder has order {kappa} < 1; not a continued-fraction tail")
    if kappa > kappa_bounds[1]:
        raise ExtensionFailedError(f"next level needs degree {kappa}, beyond the bound {kappa_bounds[1]}")
    lam = g.coeff(kappa)
    h = g.inverse().scale(lam)
    phi = h.polynomial_part()
    return lam, phi, h - _poly_series(phi, h.prec)


def _peel(deq, mc: CorrectionFunction, prec: int):
    """Remainder series after removing mc's polynomial part and levels."""
    x = formal_solution(deq, prec)
    g = x - _poly_series(mc.poly_part, prec)
    if not g.is_zero() and g.order < 1:
        raise ExtensionFailedError("polynomial part does not match the formal solution")
    for j, (lam, phi) in enumerate(mc.levels):
        if g.is_zero():
            raise PrecisionLost("remainder vanished within precision")
        if g.order < 1:
            raise ExtensionFailedError(f"level {j} does not match the formal solution")
        h = g.inverse().scale(lam)
        g = h - _poly_series(phi, h.prec)
        if not g.is_zero() and g.order < 1:
            raise ExtensionFailedError(f"level {j} does not match the formal solution")
    return g


def test_error(deq: DifferenceEquation, mc: CorrectionFunction) -> TestError:
    """Exact defect T = MC(m) - a(m) MC(m+1) - b(m) with its decay order and constant."""
    _require_numeric(deq)
    f = mc.as_rf()
    t = f - deq.ratio * f.shift(VAR, 1) - deq.rhs
    if t.is_zero():
        return TestError(t, math.inf, Fraction(0))
    k0 = -t.degree(VAR)
    c = -t.leading_ratio(VAR).const_value()
    return TestError(t, k0, c)


test_error.__test__ = False


def initial_correction(deq: DifferenceEquation, kappa_bounds=KAPPA_BOUNDS,
                       poly_degree_cap: int = POLY_DEGREE_CAP) -> CorrectionFunction:
    """MC_0: the polynomial part of the solution plus its first continued-fraction level.

    If the leading exponent kappa_0 is positive, MC_0 = lam_0/Phi_0(m) with
    deg Phi_0 = kappa_0.  Otherwise MC_0 carries a polynomial part of degree
    -kappa_0 followed by one fraction level.
    """
    found = leading_search(deq, kappa_bounds)
    if found is None:
        return CorrectionFunction()
    kappa0, lam0, _ = found
    if -kappa0 > poly_degree_cap:
        raise UnsupportedEquationError(
            f"polynomial part of degree {-kappa0} exceeds the cap {poly_degree_cap}")
    prec = 16
    while True:
        try:
            x = formal_solution(deq, prec)
            lead = x.coeff(x.order) if not x.is_zero() else None
            if x.order != kappa0 or lead != lam0:
                raise UnsupportedEquationError(
                    f"series solution starts at u^{x.order}, expected u^{kappa0}; {HARMONIC_HINT}")
            poly = x.polynomial_part() if kappa0 <= 0 else Polynomial()
            mc = CorrectionFunction(poly)
            g = x - _poly_series(poly, prec)
            if g.is_zero():
                if test_error(deq, mc).exact:
                    return mc
                raise PrecisionLost("remainder vanished within precision")
            lam, phi, _ = _level_from(g, kappa_bounds)
            return mc.append(lam, phi)
        except PrecisionLost:
            prec *= 2
            if prec > MAX_PRECISION:
                raise ExtensionFailedError("series precision exhausted for the initial correction")


def extend_correction(deq: DifferenceEquation, prev: CorrectionFunction,
                      kappa_bounds=KAPPA_BOUNDS) -> CorrectionFunction:
    """MC_{k+1} from MC_k: one more level, with strictly faster-decaying defect.

    An exact prev (T = 0) is returned unchanged.
    """
    before = test_error(deq, prev)
    if before.exact:
        return prev
    prec = 16 + 4 * sum(phi.degree(VAR) for _, phi in prev.levels)
    while True:
        try:
            g = _peel(deq, prev, prec)
            if g.is_zero():
                raise PrecisionLost("remainder vanished within precision")
            lam, phi, _ = _level_from(g, kappa_bounds)
            break
        except PrecisionLost:
            prec *= 2
            if prec > MAX_PRECISION:
                raise ExtensionFailedError("series precision exhausted while extending")
    out = prev.append(lam, phi)
    after = test_error(deq, out)
    if not after.decay_order > before.decay_order:
        raise ExtensionFailedError(
            f"defect degree did not decrease ({before.degree} -> {after.degree})")
    return out


@dataclass
class EngineRun:
    corrections: list
    errors: list
    unsupported: str | None = None


def run_engine(deq: DifferenceEquation, kmax: int, kappa_bounds=KAPPA_BOUNDS) -> EngineRun:
    """MC_0 .. MC_kmax with their test errors; stops early at an exact solution."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    mc = initial_correction(deq, kappa_bounds)
    out, errs = [mc], [test_error(deq, mc)]
    for _ in range(kmax):
        if errs[-1].exact:
            break
        mc = extend_correction(deq, mc, kappa_bounds)
        out.append(mc)
        errs.append(test_error(deq, mc))
    return EngineRun(out, errs)


def correction_error(term: RamanujanTerm, mc: CorrectionFunction, n: int, limit_value,
                     precision: int = 50, bindings=None) -> decimal.Decimal:
    """E(n) = limit - sum_{m<n} t_m - W(n) MC(n), rounded to `precision` digits."""
    if n < 0:
        raise ValueError("n must be >= 0")
    bound = term.bind(bindings or {})
    if isinstance(limit_value, str):
        limit_value = decimal.Decimal(limit_value)
    limit = Fraction(limit_value)
    e = limit - bound.partial_sum(n) - bound.weight(n) * mc.evaluate(n)
    return to_decimal(e, precision)
