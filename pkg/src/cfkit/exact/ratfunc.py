"""Rational functions num/den over Q in canonical form."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..errors import PoleError
from .polynomial import NEG_INF, ONE, ZERO, Polynomial, exact_div, gcd, sort_vars


class RationalFunction:
    """Immutable num/den with gcd(num, den) = 1 and lex-leading coefficient of den = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical=False):
        num = _poly(num)
        den = ONE if den is None else _poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def var(cls, name: str) -> "RationalFunction":
        return cls(Polynomial.var(name), ONE, _canonical=True)

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(Polynomial.const(c), ONE, _canonical=True)

    # -- queries --------------------------------------------------------
    @property
    def vars(self) -> tuple[str, ...]:
        return sort_vars(self.num.vars + self.den.vars)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    def is_polynomial(self) -> bool:
        return self.den.is_const()

    def degree(self, var: str):
        """deg_var(num) - deg_var(den); -inf for the zero function."""
        if self.num.is_zero():
            return NEG_INF
        return self.num.degree(var) - self.den.degree(var)

    def leading_ratio(self, var: str) -> "RationalFunction":
        """Ratio of leading coefficients in `var` (coefficient of var**degree at infinity)."""
        return RationalFunction(self.num.leading_coeff(var), self.den.leading_coeff(var))

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _rf(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _rf(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _rf(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _rf(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _rf(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den ** -n, self.num ** -n)
        return RationalFunction(self.num ** n, self.den ** n, _canonical=True)

    # -- evaluation and substitution -----------------------------------
    def subs(self, bindings: Mapping[str, object]) -> "RationalFunction":
        den = self.den.subs(bindings)
        if den.is_zero():
            raise PoleError(f"denominator vanishes at {dict(bindings)}")
        return RationalFunction(self.num.subs(bindings), den)

    def evaluate(self, bindings: Mapping[str, object]) -> Fraction:
        d = self.den.evaluate(bindings)
        if d == 0:
            raise PoleError(f"pole at {dict(bindings)}")
        return self.num.evaluate(bindings) / d

    def __call__(self, **bindings):
        return self.evaluate(bindings)

    def substitute(self, var: str, value) -> "RationalFunction":
        """Compose: replace `var` by a polynomial or rational function."""
        value = _rf(value)
        if var not in self.vars:
            return self
        p, q = value.num, value.den
        if q.is_const():
            return RationalFunction(self.num.substitute(var, p.scale(1 / q.const_value())),
                                    self.den.substitute(var, p.scale(1 / q.const_value())))
        top = max(self.num.degree(var), self.den.degree(var))
        return RationalFunction(_homogenized(self.num, var, p, q, top),
                                _homogenized(self.den, var, p, q, top))

    def shift(self, var: str, h) -> "RationalFunction":
        return self.substitute(var, Polynomial.var(var) + h)

    # -- comparison and printing ----------------------------------------
    def __eq__(self, other):
        other = _rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        # print with coprime integer coefficients throughout
        both = Polynomial({(i,): c for i, c in enumerate(
            list(self.num.terms.values()) + list(self.den.terms.values()))}, ("_",))
        scale = Fraction(1, both.content())
        num, den = self.num.scale(scale), self.den.scale(scale)
        n = str(num)
        if len(num.terms) > 1:
            n = f"({n})"
        d = str(den)
        if len(den.terms) > 1 or "*" in d or "^" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RationalFunction({self})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFunction":
        return cls(Polynomial.from_json(data["num"]), Polynomial.from_json(data["den"]))


def _homogenized(f: Polynomial, var: str, p: Polynomial, q: Polynomial, top: int) -> Polynomial:
    out = ZERO
    for d, c in f.coeffs_in(var).items():
        out = out + c * p ** d * q ** (top - d)
    return out


def _canonicalize(num: Polynomial, den: Polynomial):
    if num.is_zero():
        return ZERO, ONE
    if not den.is_const() and not num.is_const():
        g = gcd(num, den)
        if not g.is_const():
            num, den = exact_div(num, g), exact_div(den, g)
    lc = den.lex_leading_coeff()
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return num, den


def _poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    raise TypeError(f"expected a polynomial, got {type(x).__name__}")


def _rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction(x, ONE, _canonical=True)
    if isinstance(x, (int, Fraction)):
        return RationalFunction.const(x)
    return NotImplemented


def as_rf(x) -> RationalFunction:
    r = _rf(x)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return r


def simplify(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Canonical rational function num/den."""
    return RationalFunction(num, den)
