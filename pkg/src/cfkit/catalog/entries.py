"""The seven series with continued-fraction tails, as data.

Element formulas are entered the way they are usually written, in a
half-index for period-two fractions (a_{2k}, a_{2k-1}, ...), and
converted here to rules in the global element index k.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Mapping

from ..cfrac import CFSpec, ModifyingSequence
from ..errors import DomainError
from ..exact import Polynomial, RationalFunction, as_fraction, parse_rf
from ..mc import DifferenceEquation, RamanujanTerm, term_ratio
from . import oracles

K = Polynomial.var("k")


def expr(text: str) -> RationalFunction:
    return parse_rf(text)


def reindex(text: str, step: int = 1, offset: int = 0, shift: int = 0) -> RationalFunction:
    """A formula for item j = step*k + offset, as a rule for global position n = j + shift."""
    rf = parse_rf(text)
    # k_half = (n - shift - offset) / step
    value = RationalFunction(K + (-shift - offset), Polynomial.const(step))
    return rf.substitute("k", value)


@dataclass(frozen=True)
class Identity:
    """sum of signed b/r terms at index step*k + offset equals `rhs` identically.

    terms: tuples (sign, 'b' | 'r', step, offset); step 0 means a fixed index.
    """

    label: str
    terms: tuple
    rhs: RationalFunction


@dataclass(frozen=True)
class Certificate:
    """Bauer-Muir data from a lemma's proof."""

    cf: CFSpec                       # F(x) = b0 + K(a_k / b_k)
    factors: ModifyingSequence       # r_0, r_1, ...
    phi: RationalFunction            # the constant phi_k
    identities: tuple = ()
    label: str = ""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    term: RamanujanTerm
    scale: Fraction                  # constant = scale * (sum_{m<n} t_m + W(n) (head + tail(n)))
    head: RationalFunction
    cf_tail: CFSpec
    deq: DifferenceEquation
    certificates: tuple = ()
    interleaved: CFSpec | None = None    # lemma-level X_m form (even part gives cf_tail)
    alternate: CFSpec | None = None      # interleaved form with the same value as head+tail
    params: tuple = ()
    domain: Callable | None = None
    min_n: int = 0
    oracle: Callable | None = None       # (bindings, digits) -> Fraction
    closed_form: Callable | None = None  # (bindings, digits) -> Fraction, or None
    closed_form_label: str = ""
    test_bindings: tuple = ({},)
    oracle_tolerance: Fraction | None = None   # None: exact to the requested digits
    notes: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def numeric_only(self) -> bool:
        return not self.certificates

    def check_domain(self, bindings: Mapping) -> dict:
        env = {k: as_fraction(v) for k, v in bindings.items()}
        missing = [p for p in self.params if p not in env]
        if missing:
            raise DomainError(f"{self.name}: missing parameters {', '.join(missing)}")
        extra = [p for p in env if p not in self.params]
        if extra:
            raise DomainError(f"{self.name}: unknown parameters {', '.join(extra)}")
        if self.domain is not None:
            self.domain(env)
        return env

    def check_n(self, n: int):
        if n < self.min_n:
            raise DomainError(f"{self.name}: n must be >= {self.min_n}")

    def with_cf_tail(self, cf: CFSpec) -> "CatalogEntry":
        return replace(self, cf_tail=cf)


# -- domain predicates -----------------------------------------------------------------

def _arcsine_domain(env):
    if not 0 < env["w"] < 4:
        raise DomainError("arcsine needs 0 < w < 4")


def _lerch_domain(env):
    z, a = env["z"], env["alpha"]
    if z == 1:
        raise DomainError("lerch needs z != 1")
    if abs(z) > 1:
        raise DomainError("lerch needs |z| <= 1")
    if z == 0:
        raise DomainError("lerch needs z != 0 (the series term uses q = 1/z)")
    if a <= 0:
        raise DomainError("lerch needs alpha > 0")


def _exp_domain(env):
    if env["z"] == 0:
        raise DomainError("exp needs z != 0 (the series term uses q = 1/z)")


def _mathieu_domain(env):
    if env["r"] <= 0:
        raise DomainError("mathieu needs r > 0")


def _mathieu_oracle(env, digits):
    est, _ = oracles.mathieu_series(env["r"], Fraction(1, 10 ** min(digits + 1, 14)))
    return est


# -- builders ---------------------------------------------------------------------

def _tail_from_sequences(first_a: str, first_b: str, rules_a, rules_b, period: int) -> CFSpec:
    """first_a/(first_b + p_1/(x + q_1 + ...)): element n >= 2 uses index n - 1."""
    rules = tuple((rules_a[c], rules_b[c]) for c in range(period))
    return CFSpec(RationalFunction.const(0), rules, ((expr(first_a), expr(first_b)),))


def _catalan() -> CatalogEntry:
    term = RamanujanTerm(expr("1/(2*m+1)^2"), ((1, 0), (1, 0)), ((2, 0),), expr("1/4"))
    p = "(2*k)^3*(2*k-1)^3/(4*(4*k-3)*(4*k-1)^2*(4*k+1))"
    q = "(4*k^2+2*k-1)/(2*(4*k-1)*(4*k+3))"
    tail = _tail_from_sequences("1/2", "x + 1/6", [reindex(p, shift=1)], [expr("x") + reindex(q, shift=1)], 1)
    # X_m = (1/2)/(m + kappa_1/(lambda_1 + ...)), element n >= 2 is (kappa_{n-1}, lambda_{n-1})
    interleaved = CFSpec(
        RationalFunction.const(0),
        ((reindex("(2*k-1)^3/(2*(4*k-3)*(4*k-1))", 2, -1, shift=1), expr("1")),        # n even
         (reindex("-(2*k)^3/(2*(4*k-1)*(4*k+1))", 2, 0, shift=1), expr("x"))),          # n odd
        ((expr("1/2"), expr("x")),))
    lemma = CFSpec(
        expr("x"),
        ((reindex("-(2*k)^3/2", 2, 0), reindex("(4*k+1)*x", 2, 0)),
         (reindex("(2*k-1)^3/2", 2, -1), reindex("4*k-1", 2, -1))))
    factors = ModifyingSequence((reindex("2*k^2-(2*x-1)*k+2*x^2+x+1/2", 2, 0),
                                 reindex("-2*k+2*x+1", 2, -1)))
    cert = Certificate(lemma, factors, expr("-(2*x+1)^3/2"), (
        Identity("b_0 + r_0 = (2x+1)^2/2", ((1, "b", 0, 0), (1, "r", 0, 0)), expr("(2*x+1)^2/2")),
        Identity("b_1 + r_1 = 2(x+1)", ((1, "b", 0, 1), (1, "r", 0, 1)), expr("2*(x+1)")),
        Identity("b_{2k} + r_{2k} - r_{2k-2} = (4k-1)(x+1)",
                 ((1, "b", 2, 0), (1, "r", 2, 0), (-1, "r", 2, -2)), expr("(4*k-1)*(x+1)")),
        Identity("b_{2k+1} + r_{2k+1} - r_{2k-1} = 4k+1",
                 ((1, "b", 2, 1), (1, "r", 2, 1), (-1, "r", 2, -1)), expr("4*k+1")),
    ), "catalan")
    return CatalogEntry(
        "catalan", "Catalan's constant K = (1/2) sum 4^m (m!)^2 / ((2m)! (2m+1)^2)",
        term, Fraction(1, 2), RationalFunction.const(0), tail, term_ratio(term), (cert,),
        interleaved=interleaved,
        oracle=lambda env, d: oracles.catalan_constant(d),
        closed_form=lambda env, d: oracles.catalan_constant(d),
        closed_form_label="K (alternating series, accelerated)")


def _catalan_companion() -> CatalogEntry:
    term = RamanujanTerm(expr("1/(4*m+1)^2"), ((1, 0), (1, 0)), ((2, 0),), expr("1/4"))
    p_odd = "(2*k-1)^4/(16*(4*k-3)*(4*k+1))"
    p_even = "(2*k)^4/(16*(4*k-3)*(4*k+1))"
    # element n >= 2 uses p_{n-1}, q_{n-1}: n even -> n-1 odd (q = -1/2), n odd -> q = 0
    tail = _tail_from_sequences(
        "1/8", "x", [reindex(p_odd, shift=1), reindex(p_even, shift=1)], [expr("x - 1/2"), expr("x")], 2)
    interleaved = CFSpec(
        RationalFunction.const(0),
        ((reindex("(4*k-3)^4/(16*(8*k-7)*(8*k-3))", 2, -1, shift=1), expr("x - 1/2")),
         (reindex("(4*k)^4/(16*(8*k-3)*(8*k+1))", 2, 0, shift=1), expr("x"))),
        ((expr("1/8"), expr("x")),))
    lemma = CFSpec(
        expr("x"),
        ((reindex("(4*k)^4/16", 2, 0), reindex("(8*k+1)*x", 2, 0)),
         (reindex("(4*k-3)^4/16", 2, -1), reindex("(8*k-3)*(x-1/2)", 2, -1))))
    factors = ModifyingSequence((reindex("4*k^2-(4*x-1)*k+2*x^2+1/8", 2, 0),
                                 reindex("4*k^2-(4*x+1)*k+2*x^2+x+1/8", 2, -1)))
    cert = Certificate(lemma, factors, expr("-(4*x+1)^4/64"), (
        Identity("b_0 + r_0 = (4x+1)^2/8", ((1, "b", 0, 0), (1, "r", 0, 0)), expr("(4*x+1)^2/8")),
        Identity("b_1 + r_1 = (16x^2+16x+5)/8", ((1, "b", 0, 1), (1, "r", 0, 1)), expr("(16*x^2+16*x+5)/8")),
        Identity("b_{2k} + r_{2k} - r_{2k-2} = (8k-3)(x+1)",
                 ((1, "b", 2, 0), (1, "r", 2, 0), (-1, "r", 2, -2)), expr("(8*k-3)*(x+1)")),
        Identity("b_{2k+1} + r_{2k+1} - r_{2k-1} = (8k+1)(x+1/2)",
                 ((1, "b", 2, 1), (1, "r", 2, 1), (-1, "r", 2, -1)), expr("(8*k+1)*(x+1/2)")),
    ), "catalan_companion")
    return CatalogEntry(
        "catalan_companion", "G = sum 4^m (m!)^2 / ((2m)! (4m+1)^2)",
        term, Fraction(1), RationalFunction.const(0), tail, term_ratio(term), (cert,),
        interleaved=interleaved,
        oracle=lambda env, d: oracles.catalan_companion(d))


def _arcsine() -> CatalogEntry:
    term = RamanujanTerm(expr("1/(2*m+1)"), ((1, 0), (1, 0)), ((2, 0),), expr("1/w"))
    p = "-2*w*k*(2*k-1)/(4-w)^2"
    q = "(2+(4+w)*k)/(4-w)"
    tail = _tail_from_sequences("2/(4-w)", "x + 2/(4-w)", [reindex(p, shift=1)],
                                [expr("x") + reindex(q, shift=1)], 1)
    lemma = CFSpec(expr("x + 2/(4-w)"), ((expr(p), expr("x") + expr(q)),))
    main_r = ModifyingSequence((expr("-w*k/(4-w) + w*x/(4-w)"),))
    alt_r = ModifyingSequence((expr("(4*k + 2 + 4*x)/(w-4)"),))
    identities = (
        Identity("b_0 + r_0 = 2(2x+1)/(4-w)", ((1, "b", 0, 0), (1, "r", 0, 0)), expr("2*(2*x+1)/(4-w)")),
        Identity("b_1 + r_1 = 2(3+2x)/(4-w)", ((1, "b", 0, 1), (1, "r", 0, 1)), expr("2*(3+2*x)/(4-w)")),
        Identity("b_{k+1} + r_{k+1} - r_{k-1} = x + 1 + q_k",
                 ((1, "b", 1, 1), (1, "r", 1, 1), (-1, "r", 1, -1)), expr("x + 1") + expr(q)),
    )
    certs = (
        Certificate(lemma, main_r, expr("-2*w*(x+1)*(2*x+1)/(4-w)^2"), identities, "arcsine"),
        Certificate(lemma, alt_r, expr("-2*w*x*(2*x-1)/(4-w)^2"), (), "arcsine, alternative factors"),
    )
    alternate = CFSpec(
        RationalFunction.const(0),
        ((reindex("2*(2*k-1)/(4-w)", 2, 0), expr("1")),
         (reindex("w*k/(4-w)", 2, 1), expr("x"))),
        ((expr("2/(4-w)"), expr("x")),))
    return CatalogEntry(
        "arcsine", "g(w) = sum w^m (m!)^2 / ((2m)! (2m+1)) = 4 arcsin(sqrt(w)/2) / sqrt(w(4-w))",
        term, Fraction(1), RationalFunction.const(0), tail, term_ratio(term), certs,
        alternate=alternate, params=("w",), domain=_arcsine_domain,
        oracle=lambda env, d: oracles.arcsine_series(env["w"], d),
        closed_form=lambda env, d: (oracles.arcsine_closed_form(int(env["w"]), d)
                                    if env["w"] in (1, 2, 3) else None),
        closed_form_label="g(1), g(2), g(3) = 2pi/(3 sqrt 3), pi/2, 4pi/(3 sqrt 3)",
        test_bindings=({"w": 1}, {"w": 2}, {"w": 3}))


def _lerch() -> CatalogEntry:
    term = RamanujanTerm(expr("1/(m+alpha)"), (), (), expr("1/z"))
    p = "-z*k^2/(1-z)^2"
    q = "alpha + ((1+z)*k+z)/(1-z)"
    tail = _tail_from_sequences("1/(1-z)", "x + alpha + z/(1-z)", [reindex(p, shift=1)],
                                [expr("x") + reindex(q, shift=1)], 1)
    lemma = CFSpec(expr("x") + expr("alpha + z/(1-z)"), ((expr(p), expr("x") + expr(q)),))
    factors = ModifyingSequence((expr("-(k + x + alpha)/(1-z)"),))
    cert = Certificate(lemma, factors, expr("-z*(x+alpha-1)^2/(1-z)^2"), (
        Identity("b_0 + r_0 = (1-x-alpha)z/(1-z)", ((1, "b", 0, 0), (1, "r", 0, 0)),
                 expr("(1-x-alpha)*z/(1-z)")),
        Identity("b_1 + r_1 = (2-x-alpha)z/(1-z)", ((1, "b", 0, 1), (1, "r", 0, 1)),
                 expr("(2-x-alpha)*z/(1-z)")),
        Identity("b_{k+1} + r_{k+1} - r_{k-1} = b_k - 1",
                 ((1, "b", 1, 1), (1, "r", 1, 1), (-1, "r", 1, -1)), expr("x") + expr(q) - 1),
    ), "lerch")
    alternate = CFSpec(
        RationalFunction.const(0),
        ((reindex("k*z/(1-z)", 2, 0), expr("1")),
         (reindex("k/(1-z)", 2, 1), expr("x + alpha"))),
        ((expr("1/(1-z)"), expr("x + alpha")),))

    def closed(env, d):
        if env["z"] == -1 and env["alpha"] == 1:
            return oracles.log2_series(d)
        return None

    return CatalogEntry(
        "lerch", "Phi(z, 1, alpha) = sum z^m / (m + alpha)",
        term, Fraction(1), RationalFunction.const(0), tail, term_ratio(term), (cert,),
        alternate=alternate, params=("z", "alpha"), domain=_lerch_domain,
        oracle=lambda env, d: oracles.lerch_phi1(env["z"], env["alpha"], d),
        closed_form=closed, closed_form_label="Phi(-1, 1, 1) = ln 2",
        test_bindings=({"z": -1, "alpha": 1}, {"z": Fraction(1, 2), "alpha": 1},
                       {"z": Fraction(1, 2), "alpha": Fraction(1, 4)}))


def _landau_companion() -> CatalogEntry:
    term = RamanujanTerm(expr("1"), ((2, 0), (2, 0)), ((1, 0),) * 4, expr("-16"))
    p_even = "k*(2*k+1)/2"          # p_{2k}
    p_odd = "(4*k-1)^2/16"          # p_{2k-1}
    # element n >= 2 is (p_{n-1}, x + 1/4): n even -> n-1 = 2k-1, n odd -> n-1 = 2k
    tail = _tail_from_sequences(
        "1/4", "x + 1/4", [reindex(p_odd, 2, -1, shift=1), reindex(p_even, 2, 0, shift=1)],
        [expr("x + 1/4"), expr("x + 1/4")], 2)
    lemma = CFSpec(expr("x + 1/4"), ((reindex(p_even, 2, 0), expr("x + 1/4")),
                                     (reindex(p_odd, 2, -1), expr("x + 1/4"))))
    factors = ModifyingSequence((reindex("k + (5-8*x^2)/(4*(4*x+3))", 2, 0),
                                 reindex("k - (2*x+1)^2/(2*(4*x+3))", 2, -1)))
    cert = Certificate(lemma, factors, expr("(2*x+1)^2*(x+1)^2/(4*x+3)^2"), (
        Identity("b_0 + r_0 = 2(x+1)^2/(4x+3)", ((1, "b", 0, 0), (1, "r", 0, 0)), expr("2*(x+1)^2/(4*x+3)")),
        Identity("b_1 + r_1 = b_0 + 1 - (2x+1)^2/(2(4x+3))", ((1, "b", 0, 1), (1, "r", 0, 1)),
                 expr("x + 1/4 + 1 - (2*x+1)^2/(2*(4*x+3))")),
        Identity("b_{2k} + r_{2k} - r_{2k-2} = b_{2k} + 1",
                 ((1, "b", 2, 0), (1, "r", 2, 0), (-1, "r", 2, -2)), expr("x + 5/4")),
        Identity("b_{2k+1} + r_{2k+1} - r_{2k-1} = b_{2k+1} + 1",
                 ((1, "b", 2, 1), (1, "r", 2, 1), (-1, "r", 2, -1)), expr("x + 5/4")),
    ), "landau_companion")
    return CatalogEntry(
        "landau_companion", "L = sum (-1)^m (2m)!^2 / (16^m (m!)^4) = Gamma(1/4) / (2 sqrt(pi) Gamma(3/4))",
        term, Fraction(1), RationalFunction.const(Fraction(1, 2)), tail, term_ratio(term), (cert,),
        oracle=lambda env, d: oracles.landau_companion_cvz(d),
        closed_form=lambda env, d: oracles.landau_companion(d),
        closed_form_label="1/AGM(1, sqrt 2)")


def _exp() -> CatalogEntry:
    term = RamanujanTerm(expr("1"), (), ((1, 0),), expr("1/z"))
    tail = CFSpec(RationalFunction.const(0), ((expr("(k-1)*z"), expr("x + k - z")),),
                  ((expr("z"), expr("x + 1 - z")),))
    lemma = CFSpec(expr("x + 1 - z"), ((expr("k*z"), expr("x + k + 1 - z")),))
    cert = Certificate(lemma, ModifyingSequence((expr("z"),)), expr("-(x+1)*z"), (
        Identity("b_0 + r_0 = x + 1", ((1, "b", 0, 0), (1, "r", 0, 0)), expr("x + 1")),
        Identity("b_1 + r_1 = x + 2", ((1, "b", 0, 1), (1, "r", 0, 1)), expr("x + 2")),
        Identity("b_{k+1} + r_{k+1} - r_{k-1} = x + k + 2 - z",
                 ((1, "b", 1, 1), (1, "r", 1, 1), (-1, "r", 1, -1)), expr("x + k + 2 - z")),
    ), "exp")

    def closed(env, d):
        return oracles.exp_series(1, d) if env["z"] == 1 else None

    return CatalogEntry(
        "exp", "exp(z) = sum z^m / m!",
        term, Fraction(1), RationalFunction.const(1), tail, term_ratio(term), (cert,),
        params=("z",), domain=_exp_domain,
        oracle=lambda env, d: oracles.exp_series(env["z"], d),
        closed_form=closed, closed_form_label="e (factorial series)",
        test_bindings=({"z": 1}, {"z": -1}, {"z": Fraction(1, 3)}))


def _mathieu() -> CatalogEntry:
    term = RamanujanTerm(expr("2*m/(m^2+r^2)^2"), (), (), expr("1"))
    kappa = "-k^4*(k^2+4*r^2)/(4*(2*k-1)*(2*k+1))"
    lam = "(2*k^2+2*k+1+4*r^2)/4"
    tail = _tail_from_sequences("1", "(x-1/2)^2 + (1+4*r^2)/4", [reindex(kappa, shift=1)],
                                [expr("(x-1/2)^2") + reindex(lam, shift=1)], 1)
    return CatalogEntry(
        "mathieu", "S(r) = sum_{m>=1} 2m / (m^2 + r^2)^2 (numeric only)",
        term, Fraction(1), RationalFunction.const(0), tail, term_ratio(term), (),
        params=("r",), domain=_mathieu_domain, min_n=1,
        oracle=_mathieu_oracle,
        test_bindings=({"r": 1}, {"r": Fraction(3, 2)}),
        oracle_tolerance=Fraction(1, 10**12),
        notes="numeric-only: no modifying factors are recorded for this fraction")


_BUILDERS = {
    "catalan": _catalan,
    "catalan_companion": _catalan_companion,
    "arcsine": _arcsine,
    "lerch": _lerch,
    "landau_companion": _landau_companion,
    "exp": _exp,
    "mathieu": _mathieu,
}
NAMES = tuple(_BUILDERS)
_CACHE: dict = {}


def entry(name: str) -> CatalogEntry:
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog entry {name!r}; choose from {', '.join(NAMES)}")
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


def entries():
    return [entry(n) for n in NAMES]


def mc_bindings(e: CatalogEntry) -> dict:
    """Default numeric parameters for engine runs."""
    return dict(e.test_bindings[0]) if e.params else {}


