"""Equivalence, Bauer-Muir and even-part transforms of symbolic continued fractions."""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import TransformError
from ..exact import Polynomial, RationalFunction
from .spec import INDEX, CFSpec, ModifyingSequence, at_index

_K = Polynomial.var(INDEX)


def _lcm(*xs: int) -> int:
    return math.lcm(*xs)


def equivalence_transform(cf: CFSpec, r: ModifyingSequence) -> CFSpec:
    """c_n = r_{n-1} r_n a_n, d_n = r_n b_n, d_0 = b_0; requires r_0 = 1 and r_n != 0."""
    if r.value(0) != RationalFunction.const(1):
        raise TransformError(f"equivalence transform needs r_0 = 1, got {r.value(0)}")
    for res, rule in enumerate(r.rules):
        if rule.is_zero():
            raise TransformError(f"modifying factor rule for residue {res} is identically zero")
    horizon = max(len(cf.initial), len(r.initial))
    for n in range(1, horizon + 1):
        if r.value(n).is_zero():
            raise TransformError(f"modifying factor r_{n} is zero")
    period = _lcm(cf.period, r.period)
    rules = []
    for c in range(period):
        a, b = cf.rule(c)
        rn = r.shifted_rule(c, 0)
        rp = r.shifted_rule(c, -1)
        rules.append((rp * rn * a, rn * b))
    initial = []
    for n in range(1, horizon + 1):
        a, b = cf.element(n)
        initial.append((r.value(n - 1) * r.value(n) * a, r.value(n) * b))
    return CFSpec(cf.b0, tuple(rules), tuple(initial), cf.params)


@dataclass(frozen=True)
class PhiFamily:
    """phi_m = a_m - r_{m-1}(b_m + r_m): rules per residue plus explicit early values."""

    rules: tuple
    initial: tuple  # phi_1 .. phi_H

    def value(self, m: int) -> RationalFunction:
        if 1 <= m <= len(self.initial):
            return self.initial[m - 1]
        return at_index(self.rules[m % len(self.rules)], m)


def phi_rule(cf: CFSpec, r: ModifyingSequence, residue: int, offset: int = 0) -> RationalFunction:
    """Symbolic phi_{k+offset} for k in the given residue class (general rules only)."""
    a, b = cf.shifted_rule(residue, offset)
    rn = r.shifted_rule(residue, offset)
    rp = r.shifted_rule(residue, offset - 1)
    return a - rp * (b + rn)


def phi_value(cf: CFSpec, r: ModifyingSequence, m: int) -> RationalFunction:
    a, b = cf.element(m)
    return a - r.value(m - 1) * (b + r.value(m))


def bauer_muir(cf: CFSpec, r: ModifyingSequence) -> tuple[CFSpec, PhiFamily]:
    """Bauer-Muir transform with modifying factors r.

    Output: head b_0 + r_0, first element phi_1 / (b_1 + r_1), then
    a_m phi_{m+1}/phi_m over b_{m+1} + r_{m+1} - r_{m-1} phi_{m+1}/phi_m.
    """
    period = _lcm(cf.period, r.period)
    horizon = max(1, len(cf.initial) + 1, len(r.initial) + 1)
    phi_rules = tuple(phi_rule(cf, r, c) for c in range(period))
    for c, ph in enumerate(phi_rules):
        if ph.is_zero():
            raise TransformError(f"Bauer-Muir transform does not exist: phi vanishes identically "
                                 f"for residue {c} mod {period}")
    phi_init = tuple(phi_value(cf, r, m) for m in range(1, horizon + 1))
    for m, ph in enumerate(phi_init, start=1):
        if ph.is_zero():
            raise TransformError(f"Bauer-Muir transform does not exist: phi_{m} = 0")
    phis = PhiFamily(phi_rules, phi_init)

    rules = []
    for c in range(period):
        # target element n = k (class c) is built from m = n - 1
        a_m, _ = cf.shifted_rule(c, -1)
        _, b_n = cf.shifted_rule(c, 0)
        ph_n = phi_rules[c]
        ph_m = at_index(phi_rules[(c - 1) % period], _K - 1)
        ratio = ph_n / ph_m
        rules.append((a_m * ratio, b_n + r.shifted_rule(c, 0) - r.shifted_rule(c, -2) * ratio))
    initial = []
    a1, b1 = cf.element(1)
    initial.append((phis.value(1), b1 + r.value(1)))
    for n in range(2, horizon + 1):
        a_m, _ = cf.element(n - 1)
        _, b_n = cf.element(n)
        ratio = phis.value(n) / phis.value(n - 1)
        initial.append((a_m * ratio, b_n + r.value(n) - r.value(n - 2) * ratio))
    out = CFSpec(cf.b0 + r.value(0), tuple(rules), tuple(initial), cf.params)
    return out, phis


def even_part(cf: CFSpec, canonical: bool = True) -> CFSpec:
    """Contraction whose k-th approximant is the input's 2k-th approximant.

    canonical=True gives the form with C_k = A_{2k}, D_k = B_{2k} exactly:
        c_1 = a_1 b_2, d_1 = a_2 + b_1 b_2,
        c_k = -a_{2k-2} a_{2k-1} b_{2k} / b_{2k-2},
        d_k = a_{2k} + b_{2k-1} b_{2k} + a_{2k-1} b_{2k} / b_{2k-2}.
    canonical=False gives the denominator-free equivalent
        c_2 = -a_2 a_3 b_4, c_k = -a_{2k-2} a_{2k-1} b_{2k-4} b_{2k} (k >= 3),
        d_k = a_{2k-1} b_{2k} + b_{2k-2}(a_{2k} + b_{2k-1} b_{2k}) (k >= 2).
    """
    p = cf.period
    even_classes = {(2 * j) % p for j in range(p)}
    for c in even_classes:
        if cf.rule(c)[1].is_zero():
            raise TransformError("even part does not exist: b_{2k} vanishes identically")
    h = len(cf.initial)
    for n in range(2, h + 3, 2):
        if cf.element(n)[1].is_zero():
            raise TransformError(f"even part does not exist: b_{n} = 0")
    out_period = p if p % 2 else p // 2

    def sub(offset_residue, offset):
        # input element 2k + offset as a rule in the output index k
        a, b = cf.rule(offset_residue)
        kk = 2 * _K + offset
        return at_index(a, kk), at_index(b, kk)

    rules = []
    for c in range(out_period):
        a2, b2 = sub(2 * c, 0)
        a1, b1 = sub(2 * c - 1, -1)
        a0, b0 = sub(2 * c - 2, -2)
        if canonical:
            rules.append((-a0 * a1 * b2 / b0, a2 + b1 * b2 + a1 * b2 / b0))
        else:
            _, bm = sub(2 * c - 4, -4)
            rules.append((-a0 * a1 * bm * b2, a1 * b2 + b0 * (a2 + b1 * b2)))

    def elem(n):
        return cf.element(n)

    horizon = max(1, (h + 2) // 2) if canonical else max(2, (h + 4) // 2)
    initial = []
    for k in range(1, horizon + 1):
        a2k, b2k = elem(2 * k)
        a2k1, b2k1 = elem(2 * k - 1)
        if k == 1:
            initial.append((a2k1 * b2k, a2k + b2k1 * b2k))
            continue
        a2k2, b2k2 = elem(2 * k - 2)
        if canonical:
            initial.append((-a2k2 * a2k1 * b2k / b2k2, a2k + b2k1 * b2k + a2k1 * b2k / b2k2))
        elif k == 2:
            initial.append((-a2k2 * a2k1 * b2k, a2k1 * b2k + b2k2 * (a2k + b2k1 * b2k)))
        else:
            b2k4 = elem(2 * k - 4)[1]
            initial.append((-a2k2 * a2k1 * b2k4 * b2k, a2k1 * b2k + b2k2 * (a2k + b2k1 * b2k)))
    return CFSpec(cf.b0, tuple(rules), tuple(initial), cf.params)
