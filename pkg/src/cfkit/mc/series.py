"""Truncated Laurent series in u = 1/m with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction

from ..exact import Polynomial, RationalFunction


class PrecisionLost(ArithmeticError):
    """Not enough known coefficients to finish the requested operation."""


class Series:
    """sum_{i} coeffs[i] * u**(order + i)  +  O(u**prec),  prec = order + len(coeffs)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        # normalize: strip leading zeros into the order
        i = 0
        while i < len(coeffs) and coeffs[i] == 0:
            i += 1
        self.order = order + i
        self.coeffs = coeffs[i:]

    @property
    def prec(self) -> int:
        return self.order + len(self.coeffs)

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        if i >= self.prec:
            raise PrecisionLost(f"coefficient of u^{i} is beyond precision {self.prec}")
        if i < self.order:
            return Fraction(0)
        return self.coeffs[i - self.order]

    def truncate(self, prec: int) -> "Series":
        prec = min(prec, self.prec)
        return Series(self.order, self.coeffs[: max(0, prec - self.order)]) if prec > self.order \
            else Series(prec, [])

    # -- construction -------------------------------------------------
    @classmethod
    def from_rf(cls, rf: RationalFunction, prec: int, var: str = "m") -> "Series":
        """Expansion of a univariate rational function at var -> infinity."""
        if rf.is_zero():
            return cls(prec, [])
        num = rf.num.univariate_coeffs(var) if rf.num.vars else [rf.num.const_value()]
        den = rf.den.univariate_coeffs(var) if rf.den.vars else [rf.den.const_value()]
        order = (len(den) - 1) - (len(num) - 1)
        n = list(reversed(num))  # coefficients of u^0, u^1, ...
        d = list(reversed(den))
        length = prec - order
        if length <= 0:
            return cls(prec, [])
        return cls(order, _power_div(n, d, length))

    @classmethod
    def monomial(cls, i: int, prec: int, c=1) -> "Series":
        return cls(i, [Fraction(c)] + [Fraction(0)] * max(0, prec - i - 1)) if prec > i else cls(prec, [])

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "Series") -> "Series":
        prec = min(self.prec, other.prec)
        order = min(self.order, other.order)
        out = [Fraction(0)] * max(0, prec - order)
        for s in (self, other):
            for j, c in enumerate(s.coeffs):
                i = s.order + j - order
                if i < len(out):
                    out[i] += c
        return Series(order, out) if out else Series(prec, [])

    def __neg__(self):
        return Series(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Series":
        c = Fraction(c)
        if c == 0:
            return Series(self.prec, [])
        return Series(self.order, [c * x for x in self.coeffs])

    def __mul__(self, other: "Series") -> "Series":
        if self.is_zero() or other.is_zero():
            return Series(min(self.prec + other.order if not other.is_zero() else self.prec + other.prec,
                              other.prec + self.order if not self.is_zero() else other.prec + self.prec), [])
        order = self.order + other.order
        length = min(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        out = [sum((a[j] * b[i - j] for j in range(i + 1)), Fraction(0)) for i in range(length)]
        return Series(order, out)

    def inverse(self) -> "Series":
        if self.is_zero():
            raise PrecisionLost("cannot invert a series with no known nonzero coefficient")
        return Series(-self.order, _power_div([Fraction(1)], self.coeffs, len(self.coeffs)))

    def shift_m(self) -> "Series":
        """The series of f(m+1): u -> u/(1+u)."""
        prec = self.prec
        out = Series(prec, [])
        for j, c in enumerate(self.coeffs):
            i = self.order + j
            if c == 0:
                continue
            length = prec - i
            out = out + Series(i, [c * b for b in _binom_series(-i, length)])
        return out

    def polynomial_part(self, var: str = "m") -> Polynomial:
        """Terms with non-positive powers of u, as a polynomial in m."""
        if self.order > 0:
            return Polynomial()
        if self.prec <= 0:
            raise PrecisionLost("polynomial part not fully known")
        return Polynomial.from_coeffs([self.coeff(-d) for d in range(-self.order + 1)], var)

    def __repr__(self):
        return f"Series(order={self.order}, coeffs={[str(c) for c in self.coeffs[:6]]}..., prec={self.prec})"


def _power_div(n, d, length):
    """First `length` coefficients of the power series n(u)/d(u), d[0] != 0."""
    if d[0] == 0:
        raise ZeroDivisionError("constant term of divisor vanishes")
    out = []
    inv = 1 / Fraction(d[0])
    for i in range(length):
        s = Fraction(n[i]) if i < len(n) else Fraction(0)
        for j in range(1, min(i, len(d) - 1) + 1):
            s -= d[j] * out[i - j]
        out.append(s * inv)
    return out


def _binom_series(e: int, length: int):
    """Coefficients of (1+u)**e for integer e."""
    out = []
    c = Fraction(1)
    for i in range(length):
        out.append(c)
        c = c * (e - i) / (i + 1)
    return out
