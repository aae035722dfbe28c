"""Symbolic continued-fraction specifications and their numeric bindings."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Mapping

from ..errors import DomainError, PoleError, TerminatedError
from ..exact import Polynomial, RationalFunction, as_fraction, as_rf, parse_rf
from ..exact.polynomial import sort_vars

INDEX = "k"
_K = Polynomial.var(INDEX)


def at_index(rule: RationalFunction, expr) -> RationalFunction:
    """Substitute the index variable k by `expr` (an int or a polynomial in k)."""
    if isinstance(expr, int):
        expr = Polynomial.const(expr)
    return rule.substitute(INDEX, expr)


def _rf_list(items):
    return tuple(as_rf(x) for x in items)


def _free_params(rfs) -> tuple[str, ...]:
    names = set()
    for r in rfs:
        names.update(r.vars)
    names.discard(INDEX)
    return sort_vars(names)


@dataclass(frozen=True)
class CFSpec:
    """b0 + K(a_n / b_n) with periodic element rules in the index k.

    rules[r] = (a_r, b_r) gives element n >= 1 for n = r (mod period),
    written as rational functions of k (standing for n) and parameters.
    initial[i] overrides element n = i + 1 with a parameter-only pair.
    """

    b0: RationalFunction
    rules: tuple
    initial: tuple = ()
    params: tuple = field(default=())
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "b0", as_rf(self.b0))
        rules = tuple((as_rf(a), as_rf(b)) for a, b in self.rules)
        initial = tuple((as_rf(a), as_rf(b)) for a, b in self.initial)
        if not rules:
            raise ValueError("a continued fraction needs at least one residue rule")
        for r, (a, _) in enumerate(rules):
            if a.is_zero():
                raise ValueError(f"partial numerator rule for residue {r} is identically zero")
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "initial", initial)
        found = _free_params([self.b0] + [x for pair in rules + initial for x in pair])
        params = sort_vars(tuple(self.params) + found)
        object.__setattr__(self, "params", params)
        for i, (a, _) in enumerate(initial):
            if INDEX in a.vars or INDEX in _.vars:
                raise ValueError(f"initial element {i + 1} must not depend on the index")

    @property
    def period(self) -> int:
        return len(self.rules)

    def rule(self, residue: int) -> tuple[RationalFunction, RationalFunction]:
        return self.rules[residue % self.period]

    def element(self, n: int) -> tuple[RationalFunction, RationalFunction]:
        """(a_n, b_n) as rational functions of the parameters."""
        if n < 1:
            raise IndexError("elements are indexed from 1")
        if n <= len(self.initial):
            return self.initial[n - 1]
        a, b = self.rule(n)
        return at_index(a, n), at_index(b, n)

    def shifted_rule(self, residue_of_target: int, offset: int):
        """Rule for element (k + offset) written in k, where k = residue_of_target (mod p)."""
        a, b = self.rule(residue_of_target + offset)
        if offset == 0:
            return a, b
        kk = _K + offset
        return at_index(a, kk), at_index(b, kk)

    def bind(self, bindings: Mapping[str, object] | None = None) -> "BoundCF":
        return BoundCF(self, bindings or {})

    def with_name(self, name: str) -> "CFSpec":
        return CFSpec(self.b0, self.rules, self.initial, self.params, name)

    def to_json(self):
        def pair(a, b):
            return {"a_num": a.num.to_json(), "a_den": a.den.to_json(),
                    "b_num": b.num.to_json(), "b_den": b.den.to_json()}

        return {
            "schema": "cfkit/cfspec/v1",
            "name": self.name,
            "b0": self.b0.to_json(),
            "period": self.period,
            "index": INDEX,
            "rules": [pair(a, b) for a, b in self.rules],
            "initial": [pair(a, b) for a, b in self.initial],
            "params": list(self.params),
        }

    @classmethod
    def from_json(cls, data) -> "CFSpec":
        def pair(d):
            return (RationalFunction(Polynomial.from_json(d["a_num"]), Polynomial.from_json(d["a_den"])),
                    RationalFunction(Polynomial.from_json(d["b_num"]), Polynomial.from_json(d["b_den"])))

        if len(data["rules"]) != data["period"]:
            raise ValueError("period does not match the number of rules")
        return cls(RationalFunction.from_json(data["b0"]), tuple(pair(d) for d in data["rules"]),
                   tuple(pair(d) for d in data.get("initial", [])), tuple(data.get("params", [])),
                   data.get("name", ""))

    @classmethod
    def from_strings(cls, b0: str, rules, initial=(), params=(), name="") -> "CFSpec":
        """Build from expression strings; variables other than k become parameters."""
        return cls(parse_rf(b0), tuple((parse_rf(a), parse_rf(b)) for a, b in rules),
                   tuple((parse_rf(a), parse_rf(b)) for a, b in initial), tuple(params), name)

    @classmethod
    def from_elements(cls, b0, elements) -> "CFSpec":
        """A finite explicit CF; the trailing rule repeats the last element."""
        elements = [(Fraction(a), Fraction(b)) for a, b in elements]
        if not elements:
            return cls(b0, ((1, 1),))
        return cls(b0, (elements[-1],), tuple(elements))


@dataclass(frozen=True)
class ModifyingSequence:
    """r_n for n >= 0: periodic rules in k plus explicit values for n = 0..len(initial)-1."""

    rules: tuple
    initial: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", _rf_list(self.rules))
        object.__setattr__(self, "initial", _rf_list(self.initial))
        if not self.rules:
            raise ValueError("modifying sequence needs at least one rule")

    @property
    def period(self) -> int:
        return len(self.rules)

    def rule(self, residue: int) -> RationalFunction:
        return self.rules[residue % self.period]

    def value(self, n: int) -> RationalFunction:
        if n < 0:
            raise IndexError("modifying factors are indexed from 0")
        if n < len(self.initial):
            return self.initial[n]
        return at_index(self.rule(n), n)

    def shifted_rule(self, residue_of_target: int, offset: int) -> RationalFunction:
        r = self.rule(residue_of_target + offset)
        return r if offset == 0 else at_index(r, _K + offset)

    @classmethod
    def from_strings(cls, rules, initial=()) -> "ModifyingSequence":
        return cls(tuple(parse_rf(r) for r in rules), tuple(parse_rf(r) for r in initial))

    def to_json(self):
        return {"rules": [r.to_json() for r in self.rules],
                "initial": [r.to_json() for r in self.initial]}


# -- numeric binding ------------------------------------------------------

def _int_poly(rf: RationalFunction):
    """Ascending integer coefficient lists (num, den) of a univariate rf in k."""
    num = rf.num.univariate_coeffs(INDEX)
    den = rf.den.univariate_coeffs(INDEX)
    dens = [c.denominator for c in num + den]
    lcm = reduce(lambda x, y: x * y // math.gcd(x, y), dens, 1)
    return [int(c * lcm) for c in num], [int(c * lcm) for c in den]


def _horner(coeffs, k: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * k + c
    return acc


class BoundCF:
    """A CFSpec with all parameters fixed to rationals; produces integer elements fast."""

    def __init__(self, spec: CFSpec, bindings: Mapping[str, object]):
        env = {name: as_fraction(v) for name, v in bindings.items()}
        missing = [p for p in spec.params if p not in env]
        if missing:
            raise DomainError(f"missing parameter bindings: {', '.join(missing)}")
        self.spec = spec
        self.bindings = env
        self.b0 = spec.b0.evaluate(env)
        self._rules = []
        for r, (a, b) in enumerate(spec.rules):
            try:
                self._rules.append((_int_poly(a.subs(env)), _int_poly(b.subs(env))))
            except PoleError as exc:
                raise PoleError(f"rule for residue {r} has a pole at {env}") from exc
        self._initial = []
        for i, (a, b) in enumerate(spec.initial):
            try:
                self._initial.append((a.evaluate(env), b.evaluate(env)))
            except PoleError as exc:
                raise PoleError(f"element {i + 1} has a pole", index=i + 1) from exc

    def element_ints(self, n: int) -> tuple[int, int, int, int]:
        """(a_num, a_den, b_num, b_den) of element n; raises on poles or a vanishing a_n."""
        if n <= len(self._initial):
            a, b = self._initial[n - 1]
            an, ad, bn, bd = a.numerator, a.denominator, b.numerator, b.denominator
        else:
            (anc, adc), (bnc, bdc) = self._rules[n % len(self._rules)]
            an, ad = _horner(anc, n), _horner(adc, n)
            bn, bd = _horner(bnc, n), _horner(bdc, n)
            if ad == 0 or bd == 0:
                raise PoleError(f"element {n} has a pole", index=n)
        if an == 0:
            raise TerminatedError(f"partial numerator a_{n} vanishes; the fraction terminates", index=n)
        return an, ad, bn, bd

    def element(self, n: int) -> tuple[Fraction, Fraction]:
        an, ad, bn, bd = self.element_ints(n)
        return Fraction(an, ad), Fraction(bn, bd)

    def elements(self, n: int):
        return [self.element(k) for k in range(1, n + 1)]

    def kernel_inputs(self, start: int, stop: int, c_prev: int):
        """Integer (beta, gamma) lists for elements start..stop-1, and the last scale.

        With c_n the lcm of the denominators of a_n and b_n, beta_n = b_n c_n and
        gamma_n = a_n c_n c_{n-1}; the recurrence on P, Q then tracks A_n, B_n
        multiplied by c_0 c_1 ... c_n.
        """
        betas, gammas, scales = [], [], []
        for n in range(start, stop):
            an, ad, bn, bd = self.element_ints(n)
            if ad < 0:
                an, ad = -an, -ad
            if bd < 0:
                bn, bd = -bn, -bd
            c = ad * bd // math.gcd(ad, bd)
            betas.append(bn * (c // bd))
            gammas.append(an * (c // ad) * c_prev)
            scales.append(c)
            c_prev = c
        return betas, gammas, scales

    def start_state(self):
        """(P_-1, P_0, Q_-1, Q_0) and c_0."""
        return (1, self.b0.numerator, 0, self.b0.denominator), self.b0.denominator
