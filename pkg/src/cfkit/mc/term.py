"""Ramanujan-type series terms and the first-order difference equations they induce."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..errors import DomainError, PoleError
from ..exact import ONE, Polynomial, RationalFunction, as_fraction, as_rf, parse_rf

VAR = "m"
_M = Polynomial.var(VAR)


@dataclass(frozen=True)
class DifferenceEquation:
    """X_m - ratio(m) X_{m+1} = rhs(m)."""

    ratio: RationalFunction
    rhs: RationalFunction

    def __post_init__(self):
        object.__setattr__(self, "ratio", as_rf(self.ratio))
        object.__setattr__(self, "rhs", as_rf(self.rhs))

    @property
    def params(self) -> tuple[str, ...]:
        names = set(self.ratio.vars) | set(self.rhs.vars)
        names.discard(VAR)
        return tuple(sorted(names))

    def bind(self, bindings: Mapping[str, object] | None = None) -> "DifferenceEquation":
        env = {k: as_fraction(v) for k, v in (bindings or {}).items() if k != VAR}
        missing = [p for p in self.params if p not in env]
        if missing:
            raise DomainError(f"missing parameter bindings: {', '.join(missing)}")
        if not env:
            return self
        return DifferenceEquation(self.ratio.subs(env), self.rhs.subs(env))

    def residual(self, x_m, x_next, m: int):
        """x_m - ratio(m) x_next - rhs(m) for numeric X values."""
        env = {VAR: m}
        return x_m - self.ratio.evaluate(env) * x_next - self.rhs.evaluate(env)

    @classmethod
    def from_strings(cls, ratio: str, rhs: str = "1") -> "DifferenceEquation":
        return cls(parse_rf(ratio), parse_rf(rhs))

    def to_json(self):
        return {"ratio": str(self.ratio), "rhs": str(self.rhs)}

    def __str__(self):
        return f"X_m - ({self.ratio}) X_(m+1) = {self.rhs}"


def _check_blocks(blocks, label):
    out = []
    for a, c in blocks:
        if not isinstance(a, int) or not isinstance(c, int):
            raise ValueError(f"{label} factorial parameters must be integers, got ({a!r}, {c!r})")
        if a <= 0:
            raise ValueError(f"{label} factorial slope must be positive, got {a}")
        out.append((a, c))
    return tuple(out)


@dataclass(frozen=True)
class RamanujanTerm:
    """t_m = R(m) * prod (a_i m + c_i)! / prod (b_j m + d_j)! * q**(-m).

    q may depend on parameters (for instance 1/z); it must not vanish.
    """

    R: RationalFunction
    num_factorials: tuple = ()
    den_factorials: tuple = ()
    q: RationalFunction = ONE

    def __post_init__(self):
        object.__setattr__(self, "R", as_rf(self.R))
        object.__setattr__(self, "q", as_rf(self.q))
        object.__setattr__(self, "num_factorials", _check_blocks(self.num_factorials, "numerator"))
        object.__setattr__(self, "den_factorials", _check_blocks(self.den_factorials, "denominator"))
        if self.q.is_zero():
            raise ValueError("q must be nonzero")
        if VAR in self.q.vars:
            raise ValueError("q must not depend on m")

    @property
    def params(self) -> tuple[str, ...]:
        names = set(self.R.vars) | set(self.q.vars)
        names.discard(VAR)
        return tuple(sorted(names))

    def weight_ratio(self) -> RationalFunction:
        """W(m+1)/W(m), with (n+1)! = (n+1) n! applied slope-many times per block."""
        out = RationalFunction(ONE)
        for a, c in self.num_factorials:
            for j in range(1, a + 1):
                out = out * (_M * a + (c + j))
        for b, d in self.den_factorials:
            for j in range(1, b + 1):
                out = out / (_M * b + (d + j))
        return out / self.q

    def bind(self, bindings: Mapping[str, object] | None = None) -> "BoundTerm":
        return BoundTerm(self, bindings or {})

    def to_json(self):
        return {"R": str(self.R), "num_factorials": [list(x) for x in self.num_factorials],
                "den_factorials": [list(x) for x in self.den_factorials], "q": str(self.q)}


def term_ratio(term: RamanujanTerm) -> DifferenceEquation:
    """The equation X_m - (W(m+1)/W(m)) X_{m+1} = R(m) satisfied by the tail X_m.

    With W(m) = t_m / R(m), the identity W(m) X_m = t_m + W(m+1) X_{m+1} holds
    for X_m = sum_{j >= m} t_j / W(m).
    """
    return DifferenceEquation(term.weight_ratio(), term.R)


def quasi_term(term: RamanujanTerm, decay_order: int) -> RamanujanTerm:
    """Same factorial blocks and q, with R(m) replaced by 1/m**decay_order."""
    if decay_order < 1:
        raise ValueError("decay order must be positive")
    return RamanujanTerm(RationalFunction(ONE, _M ** decay_order), term.num_factorials,
                         term.den_factorials, term.q)


class BoundTerm:
    """A term with numeric parameters: exact t_m, W(n) and partial sums."""

    def __init__(self, term: RamanujanTerm, bindings: Mapping[str, object]):
        env = {k: as_fraction(v) for k, v in bindings.items()}
        missing = [p for p in term.params if p not in env]
        if missing:
            raise DomainError(f"missing parameter bindings: {', '.join(missing)}")
        self.term = term
        self.bindings = env
        self.q = term.q.evaluate(env)
        self.R = term.R.subs(env)

    def weight(self, n: int) -> Fraction:
        """prod (a_i n + c_i)! / prod (b_j n + d_j)! * q**(-n)."""
        if n < 0:
            raise ValueError("n must be >= 0")
        num, den = 1, 1
        for a, c in self.term.num_factorials:
            if a * n + c < 0:
                raise PoleError(f"factorial of negative argument {a * n + c} at n={n}", index=n)
            num *= math.factorial(a * n + c)
        for b, d in self.term.den_factorials:
            if b * n + d < 0:
                raise PoleError(f"factorial of negative argument {b * n + d} at n={n}", index=n)
            den *= math.factorial(b * n + d)
        return Fraction(num, den) * self.q ** (-n)

    def value(self, m: int) -> Fraction:
        return self.R.evaluate({VAR: m}) * self.weight(m)

    def partial_sum(self, n: int) -> Fraction:
        """sum_{m < n} t_m, exactly."""
        return sum((self.value(m) for m in range(n)), Fraction(0))
