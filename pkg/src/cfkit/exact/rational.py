"""Rational scalars: parsing, serialization and correctly rounded decimal output.

Scalars are plain :class:`fractions.Fraction` objects, which are already
canonical (positive denominator, reduced).  This module only adds the
conversions the rest of the package needs.
"""
from __future__ import annotations

import decimal
import re
from fractions import Fraction

from ..errors import ParseError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*([+-]?\d+)\s*$")
_DECIMAL_RE = re.compile(r"^\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\s*$")


def as_fraction(value) -> Fraction:
    """Coerce int, Fraction, Decimal or a "p/q" / finite decimal string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, decimal.Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    if _DECIMAL_RE.match(text):
        return Fraction(text.strip())
    raise ParseError(f"not a rational number: {text!r}")


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _decimal_exponent(x: Fraction) -> int:
    """Largest e with 10**e <= |x|, for x != 0."""
    return ratio_exponent(abs(x.numerator), x.denominator)


def ratio_exponent(p: int, q: int) -> int:
    """Largest e with 10**e <= p/q for positive integers p, q."""
    e = int((p.bit_length() - q.bit_length()) * 0.30102999566398120)
    while True:
        if e >= 0:
            lo = p >= q * 10**e
            hi = p < q * 10 ** (e + 1)
        else:
            lo = p * 10**-e >= q
            hi = p * 10 ** (-e - 1) < q
        if lo and hi:
            return e
        e += -1 if not lo else 1


def _round_half_even(p: int, q: int) -> int:
    n, r = divmod(p, q)
    if 2 * r > q or (2 * r == q and n % 2):
        n += 1
    return n


def round_significant(x: Fraction, digits: int) -> tuple[int, int, int]:
    """Return (sign, mantissa, exponent) with mantissa having `digits` digits.

    The value is sign * mantissa * 10**(exponent - digits + 1), correctly
    rounded half-to-even.  Zero gives (0, 0, 0).
    """
    x = Fraction(x)
    return round_ratio(x.numerator, x.denominator, digits)


def round_ratio(p: int, q: int, digits: int) -> tuple[int, int, int]:
    """round_significant for p/q given as (possibly unreduced) integers."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if q == 0:
        raise ZeroDivisionError("zero denominator")
    if p == 0:
        return 0, 0, 0
    sign = -1 if (p < 0) != (q < 0) else 1
    p, q = abs(p), abs(q)
    e = ratio_exponent(p, q)
    shift = digits - 1 - e
    if shift >= 0:
        mant = _round_half_even(p * 10**shift, q)
    else:
        mant = _round_half_even(p, q * 10**-shift)
    if mant == 10**digits:
        mant //= 10
        e += 1
    return sign, mant, e


def format_decimal(x: Fraction, digits: int) -> str:
    """Decimal string of x with `digits` significant digits (round-half-even).

    Positional notation is used for moderate exponents, scientific otherwise.
    """
    x = Fraction(x)
    return format_ratio(x.numerator, x.denominator, digits)


def format_ratio(p: int, q: int, digits: int) -> str:
    """format_decimal for an unreduced ratio p/q; avoids a big gcd."""
    sign, mant, e = round_ratio(p, q, digits)
    if sign == 0:
        return "0"
    s = str(mant)
    head = "-" if sign < 0 else ""
    if -7 <= e < digits:
        if e >= 0:
            whole, frac = s[: e + 1], s[e + 1:]
            return head + whole + ("." + frac if frac else "")
        return head + "0." + "0" * (-e - 1) + s
    body = s[0] + ("." + s[1:] if len(s) > 1 else "")
    return f"{head}{body}e{e:+d}"


def to_decimal(x: Fraction, digits: int = 6) -> decimal.Decimal:
    """Decimal with `digits` significant digits; exponent range is unbounded in practice."""
    sign, mant, e = round_significant(Fraction(x), digits)
    if sign == 0:
        return decimal.Decimal(0)
    return decimal.Decimal((0 if sign > 0 else 1, tuple(int(c) for c in str(mant)), e - digits + 1))


def log10_abs(x: Fraction) -> float:
    """Approximate log10|x| without overflowing floats; -inf for zero."""
    if x == 0:
        return float("-inf")
    e = _decimal_exponent(Fraction(x))
    lead = abs(Fraction(x)) / Fraction(10) ** e
    import math

    return e + math.log10(float(lead))
