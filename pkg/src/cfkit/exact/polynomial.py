"""Sparse multivariate polynomials with rational coefficients.

Variables live in a fixed global order (m, k, x, z, w, alpha, r, then any
other names alphabetically), which makes every canonical form unique.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Mapping

NEG_INF = -math.inf
VARIABLE_ORDER = ("m", "k", "x", "z", "w", "alpha", "r")


def var_key(name: str):
    try:
        return (0, VARIABLE_ORDER.index(name), "")
    except ValueError:
        return (1, 0, name)


def sort_vars(names) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


def _coerce_scalar(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    from .rational import as_fraction

    return as_fraction(c)


class Polynomial:
    """Immutable sparse polynomial: exponent tuples -> Fraction."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None, variables=()):
        terms = terms or {}
        variables = tuple(variables)
        if variables and list(variables) != list(sort_vars(variables)):
            order = sort_vars(variables)
            perm = [variables.index(v) for v in order]
            terms = {tuple(e[i] for i in perm): c for e, c in terms.items()}
            variables = order
        # drop zero coefficients and unused variables
        clean = {e: Fraction(c) for e, c in terms.items() if c}
        used = [i for i in range(len(variables)) if any(e[i] for e in clean)]
        if len(used) != len(variables):
            variables = tuple(variables[i] for i in used)
            merged: dict = {}
            for e, c in clean.items():
                ne = tuple(e[i] for i in used)
                merged[ne] = merged.get(ne, 0) + c
            clean = {e: c for e, c in merged.items() if c}
        self.vars = variables
        self.terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls({(): _coerce_scalar(c)}, ())

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({(1,): Fraction(1)}, (name,))

    @classmethod
    def from_coeffs(cls, coeffs, name: str) -> "Polynomial":
        """Univariate polynomial from ascending coefficients."""
        return cls({(i,): _coerce_scalar(c) for i, c in enumerate(coeffs) if c}, (name,))

    # -- basic queries --------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.vars

    def const_value(self) -> Fraction:
        if self.vars:
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def degree(self, var: str | None = None):
        """Degree in `var` (total degree if None); -inf for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def coeffs_in(self, var: str) -> dict[int, "Polynomial"]:
        """Map power -> coefficient polynomial in the remaining variables."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {d: Polynomial(t, rest) for d, t in buckets.items()}

    def leading_coeff(self, var: str) -> "Polynomial":
        cs = self.coeffs_in(var)
        if not cs:
            return ZERO
        return cs[max(cs)]

    def leading_term(self) -> tuple[tuple, Fraction]:
        """Lex-leading (exponents, coefficient) under the global variable order."""
        e = max(self.terms)
        return e, self.terms[e]

    def lex_leading_coeff(self) -> Fraction:
        return self.terms[max(self.terms)] if self.terms else Fraction(0)

    def univariate_coeffs(self, var: str) -> list[Fraction]:
        """Ascending coefficients; the polynomial must involve only `var`."""
        if not self.terms:
            return []
        if self.vars not in ((), (var,)):
            raise ValueError(f"polynomial in {self.vars} is not univariate in {var}")
        out = [Fraction(0)] * (self.degree(var) + 1)
        for e, c in self.terms.items():
            out[e[0] if e else 0] = c
        return out

    # -- arithmetic -----------------------------------------------------
    def _aligned(self, other: "Polynomial"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        allv = sort_vars(self.vars + other.vars)
        return allv, _lift(self, allv), _lift(other, allv)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        vs, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(out, vs)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ZERO
        if other.is_const():
            c = other.const_value()
            return Polynomial({e: v * c for e, v in self.terms.items()}, self.vars)
        if self.is_const():
            return other * self
        vs, a, b = self._aligned(other)
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(out, vs)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = _coerce_scalar(c)
        return Polynomial({e: v * c for e, v in self.terms.items()}, self.vars)

    # -- evaluation and substitution -----------------------------------
    def subs(self, bindings: Mapping[str, object]) -> "Polynomial":
        """Replace some variables by rational values."""
        idx = [(i, _coerce_scalar(bindings[v])) for i, v in enumerate(self.vars) if v in bindings]
        if not idx:
            return self
        keep = [i for i in range(len(self.vars)) if i not in {j for j, _ in idx}]
        out: dict = {}
        for e, c in self.terms.items():
            for i, val in idx:
                if e[i]:
                    c = c * val ** e[i]
            ne = tuple(e[i] for i in keep)
            out[ne] = out.get(ne, 0) + c
        return Polynomial(out, tuple(self.vars[i] for i in keep))

    def evaluate(self, bindings: Mapping[str, object]) -> Fraction:
        p = self.subs(bindings)
        if p.vars:
            raise ValueError(f"unbound variables {p.vars}")
        return p.const_value()

    def __call__(self, **bindings):
        return self.evaluate(bindings)

    def substitute(self, var: str, value: "Polynomial") -> "Polynomial":
        """Compose: replace `var` by the polynomial `value`."""
        value = _as_poly(value)
        if var not in self.vars:
            return self
        result = ZERO
        powers = {0: ONE}
        for d, coeff in sorted(self.coeffs_in(var).items()):
            if d not in powers:
                top = max(powers)
                acc = powers[top]
                for j in range(top + 1, d + 1):
                    acc = acc * value
                    powers[j] = acc
            result = result + coeff * powers[d]
        return result

    def shift(self, var: str, h) -> "Polynomial":
        """p(var) -> p(var + h)."""
        return self.substitute(var, Polynomial.var(var) + h)

    def rename(self, old: str, new: str) -> "Polynomial":
        return self.substitute(old, Polynomial.var(new))

    # -- comparison, hashing, printing ---------------------------------
    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if p == 1 else f"{v}^{p}" for v, p in zip(self.vars, e) if p)
            mag = abs(c)
            if mono:
                coef = "" if mag == 1 else (f"{mag}*" if mag.denominator == 1 else f"({mag})*")
                body = coef + mono
            else:
                body = str(mag)
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"Polynomial({self})"

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [[list(e), _frac_str(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data) -> "Polynomial":
        from .rational import parse_rational

        return cls({tuple(e): parse_rational(c) for e, c in data["terms"]}, data["vars"])

    # -- integer normalization -----------------------------------------
    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        g = reduce(math.gcd, nums)
        lcm = reduce(lambda a, b: a * b // math.gcd(a, b), dens)
        return Fraction(abs(g), lcm)


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _lift(p: Polynomial, allv: tuple) -> dict:
    pos = [allv.index(v) for v in p.vars]
    n = len(allv)
    out = {}
    for e, c in p.terms.items():
        ne = [0] * n
        for i, d in zip(pos, e):
            ne[i] = d
        out[tuple(ne)] = c
    return out


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    return NotImplemented


ZERO = Polynomial()
ONE = Polynomial.const(1)


# -- division and gcd ----------------------------------------------------

def exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """a / b when b divides a exactly; raises ValueError otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if b.is_const():
        return a.scale(1 / b.const_value())
    allv = sort_vars(a.vars + b.vars)
    bt = _lift(b, allv)
    be = max(bt)
    bc = bt[be]
    rem = _lift(a, allv)
    quot: dict = {}
    while rem:
        re_ = max(rem)
        diff = tuple(i - j for i, j in zip(re_, be))
        if min(diff) < 0:
            raise ValueError("polynomial division is not exact")
        f = rem[re_] / bc
        quot[diff] = f
        for e, c in bt.items():
            t = tuple(i + j for i, j in zip(e, diff))
            v = rem.get(t, 0) - f * c
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial(quot, allv)


def divides(b: Polynomial, a: Polynomial) -> bool:
    try:
        exact_div(a, b)
        return True
    except ValueError:
        return False


def _uni_divmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        f = a[-1] / lb
        s = len(a) - len(b)
        q[s] = f
        for i, c in enumerate(b):
            a[s + i] -= f * c
        while a and not a[-1]:
            a.pop()
    return q, a


def _uni_gcd(a: list, b: list) -> list:
    while b:
        _, r = _uni_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]


def monic_lex(p: Polynomial) -> Polynomial:
    """Scale so the lex-leading coefficient is 1."""
    if p.is_zero():
        return p
    return p.scale(1 / p.lex_leading_coeff())


def _content_in(p: Polynomial, var: str) -> Polynomial:
    coeffs = list(p.coeffs_in(var).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_const():
            break
        g = gcd(g, c)
    return ONE if g.is_const() else monic_lex(g)


def _pseudo_rem(a: Polynomial, b: Polynomial, var: str) -> Polynomial:
    db = b.degree(var)
    lb = b.leading_coeff(var)
    v = Polynomial.var(var)
    r = a
    while not r.is_zero() and r.degree(var) >= db:
        dr = r.degree(var)
        r = r * lb - r.leading_coeff(var) * b * v ** (dr - db)
    return r


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor over Q, normalized so the lex-leading coefficient is 1."""
    if a.is_zero():
        return monic_lex(b)
    if b.is_zero():
        return monic_lex(a)
    if a.is_const() or b.is_const():
        return ONE
    vs = sort_vars(a.vars + b.vars)
    if len(vs) == 1:
        v = vs[0]
        g = _uni_gcd(a.univariate_coeffs(v), b.univariate_coeffs(v))
        return Polynomial.from_coeffs(g, v) if g else ONE
    v = vs[0]
    if v not in a.vars:
        return gcd(a, _content_in(b, v))
    if v not in b.vars:
        return gcd(_content_in(a, v), b)
    ca, cb = _content_in(a, v), _content_in(b, v)
    c = gcd(ca, cb)
    pa, pb = exact_div(a, ca), exact_div(b, cb)
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    while not pb.is_zero() and pb.degree(v) > 0:
        r = _pseudo_rem(pa, pb, v)
        pa = pb
        pb = r if r.is_zero() or v not in r.vars else exact_div(r, _content_in(r, v))
    if pb.is_zero():
        g = exact_div(pa, _content_in(pa, v))
    else:
        g = ONE
    return monic_lex(c * g)
