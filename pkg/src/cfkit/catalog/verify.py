"""Checks that tie each catalog entry to its series, its equation and its proof data."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from decimal import Decimal
from fractions import Fraction
from typing import Mapping

from ..cfrac import CFSpec, ModifyingSequence, adaptive_value, at_index, even_part, phi_rule, value_at_depth
from ..errors import DomainError, TransformError
from ..exact import Polynomial, RationalFunction, to_decimal, verify_identity
from ..exact.rational import log10_abs
from .entries import CatalogEntry, Certificate, Identity, entry

X = "x"
_K = Polynomial.var("k")


def _entry(e) -> CatalogEntry:
    return e if isinstance(e, CatalogEntry) else entry(e)


# -- totals -----------------------------------------------------------------------

@dataclass(frozen=True)
class TailValue:
    value: Fraction
    depth: int
    converged: bool


def tail_value(e, x, bindings: Mapping, depth: int | None = None, digits: int = 30,
               max_depth: int | None = None) -> TailValue:
    """head + CF(x): at a fixed depth, or adaptively to `digits`."""
    e = _entry(e)
    env = dict(e.check_domain(bindings))
    env[X] = Fraction(x)
    head = e.head.evaluate(env)
    if depth is not None:
        return TailValue(head + value_at_depth(e.cf_tail, depth, env), depth, True)
    res = adaptive_value(e.cf_tail, env, digits, max_depth=max_depth, strict=False)
    return TailValue(head + res.value, res.depth, res.converged)


@dataclass(frozen=True)
class Total:
    value: Fraction
    partial: Fraction
    weight: Fraction
    depth: int
    converged: bool


def total(e, n: int, bindings: Mapping | None = None, depth: int | None = None, digits: int = 30,
          max_depth: int | None = None) -> Total:
    """scale * (sum_{m<n} t_m + W(n) (head + CF(n)))."""
    e = _entry(e)
    env = e.check_domain(bindings or {})
    e.check_n(n)
    bound = e.term.bind(env)
    partial = bound.partial_sum(n)
    weight = bound.weight(n)
    extra = max(0, math.ceil(log10_abs(weight))) if weight else 0
    tail = tail_value(e, n, env, depth, digits + extra + 2, max_depth)
    value = e.scale * (partial + weight * tail.value)
    return Total(value, e.scale * partial, weight, tail.depth, tail.converged)


def reference_value(e, bindings: Mapping | None = None, digits: int = 30) -> Fraction:
    """The oracle value (never computed through a continued fraction)."""
    e = _entry(e)
    env = e.check_domain(bindings or {})
    return e.oracle(env, digits)


def closed_form_value(e, bindings: Mapping | None = None, digits: int = 30):
    e = _entry(e)
    env = e.check_domain(bindings or {})
    return e.closed_form(env, digits) if e.closed_form else None


def tail_identity_residual(e, n: int, bindings: Mapping | None = None, depth: int | None = None,
                           digits: int = 30) -> Decimal:
    """|oracle - sum_{m<n} t_m - W(n)(head + CF(n))|, scaled as the entry's total."""
    ref = reference_value(e, bindings, digits)
    t = total(e, n, bindings, depth, digits)
    return to_decimal(abs(ref - t.value), 6)


def difference_equation_residual(e, m: int, bindings: Mapping | None = None, depth: int | None = None,
                                 digits: int = 30) -> Decimal:
    """|X_m - ratio(m) X_{m+1} - rhs(m)| with X from head + CF."""
    e = _entry(e)
    env = e.check_domain(bindings or {})
    e.check_n(m)
    deq = e.deq.bind(env)
    xm = tail_value(e, m, env, depth, digits).value
    xn = tail_value(e, m + 1, env, depth, digits).value
    return to_decimal(abs(deq.residual(xm, xn, m)), 6)


def n_independence(e, bindings: Mapping | None = None, ns=range(0, 11), digits: int = 30,
                   max_depth: int | None = None) -> dict:
    """Totals over n and their largest pairwise spread."""
    e = _entry(e)
    ns = [n for n in ns if n >= e.min_n]
    totals = {n: total(e, n, bindings, None, digits, max_depth) for n in ns}
    values = [t.value for t in totals.values()]
    spread = max(values) - min(values)
    return {"totals": totals, "spread": spread}


# -- alternate forms ---------------------------------------------------------------

def alt_form_residual(e, x, bindings: Mapping | None = None, depth: int = 60) -> Decimal:
    """|CF(x) at depth d - interleaved form at depth 2d|."""
    e = _entry(e)
    if e.alternate is None:
        raise DomainError(f"{e.name} has no alternate form")
    env = dict(e.check_domain(bindings or {}))
    env[X] = Fraction(x)
    main = value_at_depth(e.cf_tail, depth, env)
    alt = value_at_depth(e.alternate, 2 * depth, env)
    return to_decimal(abs(main - alt), 6)


# -- phi certificates ------------------------------------------------------------

@dataclass
class IdentityCheck:
    label: str
    passed: bool
    lhs: str = ""
    rhs: str = ""


@dataclass
class CertificateReport:
    entry: str
    label: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def to_json(self):
        return {"entry": self.entry, "label": self.label, "pass": self.passed,
                "identities": [{"label": c.label, "pass": c.passed, "lhs": c.lhs, "rhs": c.rhs}
                               for c in self.checks]}


def _indexed(seq_rule, value_at, step: int, offset: int):
    if step == 0:
        return value_at(offset)
    return at_index(seq_rule(offset), _K * step + offset)


def _identity_lhs(cf: CFSpec, r: ModifyingSequence, ident: Identity) -> RationalFunction:
    out = RationalFunction.const(0)
    for sign, kind, step, offset in ident.terms:
        if step and (step % cf.period or step % r.period):
            raise ValueError(f"identity step {step} does not respect the rule periods")
        if kind == "b":
            term = _indexed(lambda o: cf.rule(o)[1],
                            lambda o: cf.b0 if o == 0 else cf.element(o)[1], step, offset)
        else:
            term = _indexed(r.rule, r.value, step, offset)
        out = out + term * sign
    return out


def check_certificate(name: str, cert: Certificate) -> CertificateReport:
    report = CertificateReport(name, cert.label or name)
    cf, r = cert.cf, cert.factors
    period = math.lcm(cf.period, r.period)
    for c in range(period):
        phi = phi_rule(cf, r, c)
        report.checks.append(IdentityCheck(
            f"phi_k = {cert.phi} for k = {c} mod {period}",
            verify_identity(phi, cert.phi, {}), str(phi), str(cert.phi)))
    # the first index, written out explicitly
    a1, b1 = cf.element(1)
    phi1 = a1 - r.value(0) * (b1 + r.value(1))
    report.checks.append(IdentityCheck(f"phi_1 = {cert.phi}", verify_identity(phi1, cert.phi, {}),
                                       str(phi1), str(cert.phi)))
    for ident in cert.identities:
        lhs = _identity_lhs(cf, r, ident)
        report.checks.append(IdentityCheck(ident.label, verify_identity(lhs, ident.rhs, {}),
                                           str(lhs), str(ident.rhs)))
    return report


def phi_certificate(e) -> list[CertificateReport]:
    """Exact checks of every recorded Bauer-Muir certificate; [] for numeric-only entries."""
    e = _entry(e)
    return [check_certificate(e.name, c) for c in e.certificates]


# -- even-part linkage -----------------------------------------------------------

def _monic_elements(b0, elements):
    """Equivalence-normalize so every b_n has leading coefficient 1 in x."""
    out, prev = [], RationalFunction.const(1)
    for a, b in elements:
        lc = b.num.leading_coeff(X) if X in b.vars else b.num
        lc_rf = RationalFunction(lc) / RationalFunction(b.den.leading_coeff(X) if X in b.den.vars else b.den)
        rn = 1 / lc_rf
        out.append((prev * rn * a, rn * b))
        prev = rn
    return b0, out


@dataclass
class LinkageReport:
    entry: str
    depth: int
    mismatches: list

    @property
    def passed(self) -> bool:
        return not self.mismatches


def even_part_linkage(e, count: int = 15) -> LinkageReport:
    """Compare even_part(interleaved) with the tail fraction element by element."""
    e = _entry(e)
    if e.interleaved is None:
        raise DomainError(f"{e.name} has no interleaved form")
    try:
        ev = even_part(e.interleaved, canonical=True)
    except TransformError as exc:
        return LinkageReport(e.name, count, [("transform", str(exc), "")])
    b0e, lhs = _monic_elements(ev.b0, [ev.element(k) for k in range(1, count + 1)])
    b0t, rhs = _monic_elements(e.cf_tail.b0, [e.cf_tail.element(k) for k in range(1, count + 1)])
    mismatches = []
    if b0e != b0t:
        mismatches.append((0, str(b0e), str(b0t)))
    for k, (p, q) in enumerate(zip(lhs, rhs), start=1):
        if p != q:
            mismatches.append((k, f"{p[0]} / {p[1]}", f"{q[0]} / {q[1]}"))
    return LinkageReport(e.name, count, mismatches)


# -- negative controls --------------------------------------------------------------

EPS = Fraction(1, 10**6)


def _coefficient_count(rf: RationalFunction) -> int:
    return len(rf.num.terms)


def _bump(rf: RationalFunction, i: int = 0, eps=EPS) -> RationalFunction:
    """Move the i-th numerator coefficient (in sorted term order) by eps."""
    terms = dict(rf.num.terms)
    mono, c = rf.num.sorted_terms()[i]
    terms[mono] = c + eps
    return RationalFunction(Polynomial(terms, rf.num.vars), rf.den)


def _bump_pair(pair, which, i):
    a, b = pair
    return (_bump(a, i), b) if which == "a" else (a, _bump(b, i))


def _pair_sites(prefix, pair):
    return [prefix + (which, i) for which, rf in zip("ab", pair) for i in range(_coefficient_count(rf))]


def perturbation_sites(e) -> list[tuple]:
    """Every nonzero coefficient of an entry that a control may perturb.

    A site is (kind, *location, coefficient index); zero parts carry no coefficient.
    """
    e = _entry(e)
    sites = [("head", i) for i in range(_coefficient_count(e.head))]
    cf = e.cf_tail
    for r, pair in enumerate(cf.rules):
        sites += _pair_sites(("tail_rule", r), pair)
    for j, pair in enumerate(cf.initial):
        sites += _pair_sites(("tail_initial", j), pair)
    seen = []
    for ci, cert in enumerate(e.certificates):
        if cert.cf not in seen:       # a lemma fraction shared by several certificates is one datum
            seen.append(cert.cf)
            for r, pair in enumerate(cert.cf.rules):
                sites += _pair_sites(("lemma_rule", ci, r), pair)
            for j, pair in enumerate(cert.cf.initial):
                sites += _pair_sites(("lemma_initial", ci, j), pair)
            sites += [("lemma_b0", ci, i) for i in range(_coefficient_count(cert.cf.b0))]
        for r, rf in enumerate(cert.factors.rules):
            sites += [("factor", ci, r, i) for i in range(_coefficient_count(rf))]
        for j, rf in enumerate(cert.factors.initial):
            sites += [("factor_initial", ci, j, i) for i in range(_coefficient_count(rf))]
    return sites


def _with_pair(pairs, at, which, i):
    pairs = list(pairs)
    pairs[at] = _bump_pair(pairs[at], which, i)
    return tuple(pairs)


def _with_rf(rfs, at, i):
    rfs = list(rfs)
    rfs[at] = _bump(rfs[at], i)
    return tuple(rfs)


def perturbed(e, site) -> CatalogEntry:
    """A copy of the entry with one coefficient moved by 10**-6."""
    e = _entry(e)
    kind = site[0]
    if kind == "head":
        return replace(e, head=_bump(e.head, site[1]))
    cf = e.cf_tail
    if kind == "tail_rule":
        return replace(e, cf_tail=CFSpec(cf.b0, _with_pair(cf.rules, *site[1:]), cf.initial, cf.params, cf.name))
    if kind == "tail_initial":
        return replace(e, cf_tail=CFSpec(cf.b0, cf.rules, _with_pair(cf.initial, *site[1:]), cf.params, cf.name))
    certs = list(e.certificates)
    cert = certs[site[1]]
    lc, fac, rest = cert.cf, cert.factors, site[2:]
    if kind == "lemma_rule":
        lc = CFSpec(lc.b0, _with_pair(lc.rules, *rest), lc.initial, lc.params)
    elif kind == "lemma_initial":
        lc = CFSpec(lc.b0, lc.rules, _with_pair(lc.initial, *rest), lc.params)
    elif kind == "lemma_b0":
        lc = CFSpec(_bump(lc.b0, rest[0]), lc.rules, lc.initial, lc.params)
    elif kind == "factor":
        fac = ModifyingSequence(_with_rf(fac.rules, *rest), fac.initial)
    elif kind == "factor_initial":
        fac = ModifyingSequence(fac.rules, _with_rf(fac.initial, *rest))
    else:
        raise ValueError(f"unknown perturbation site {site!r}")
    if lc is not cert.cf:
        certs = [replace(c, cf=lc) if c.cf == cert.cf else c for c in certs]
    certs[site[1]] = replace(certs[site[1]], factors=fac)
    return replace(e, certificates=tuple(certs))
