import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfkit.catalog import NAMES, entry
from cfkit.catalog.oracles import catalan_constant, exp_series
from cfkit.cfrac import value_at_depth
from cfkit.errors import UnsupportedEquationError
from cfkit.exact import Polynomial, RationalFunction, parse_rf
from cfkit.mc import (
    CorrectionFunction, DifferenceEquation, RamanujanTerm, Series, correction_error, extend_correction,
    guess_parametric, guess_pattern, initial_correction, quasi_term, run_engine, term_ratio, test_error,
)
from cfkit.mc.engine import HARMONIC_HINT

M = Polynomial.var("m")
EXP = DifferenceEquation.from_strings("z/(m+1)", "1")


def exp_levels(z, k):
    """Levels of the exp correction MC_k at a fixed z, written out from the known closed pattern."""
    z = Fraction(z)
    lv = [(z, M + (1 - z))]
    lv += [(j * z, M + (j + 1 - z)) for j in range(1, k + 1)]
    return CorrectionFunction(Polynomial.const(1), tuple(lv))


# -- series ------------------------------------------------------------------------

small = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@given(st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=4))
def test_series_of_quotient(num, den):
    p, q = Polynomial.from_coeffs(num, "m"), Polynomial.from_coeffs(den, "m")
    if p.is_zero() or q.is_zero():
        return
    f = RationalFunction(p, q)
    sp, sq = Series.from_rf(RationalFunction(p), 12), Series.from_rf(RationalFunction(q), 12)
    sf = Series.from_rf(f, 6)
    prod = sf * sq
    for i in range(prod.order, min(prod.prec, sp.prec)):
        assert prod.coeff(i) == sp.coeff(i)


def test_series_inverse_and_shift():
    s = Series.from_rf(parse_rf("1/(m+2)"), 8)
    assert s.order == 1 and s.coeff(2) == -2
    one = s * s.inverse()
    assert one.coeff(0) == 1 and all(one.coeff(i) == 0 for i in range(1, one.prec))
    shifted = s.shift_m()
    ref = Series.from_rf(parse_rf("1/(m+3)"), 8)
    for i in range(1, min(shifted.prec, ref.prec)):
        assert shifted.coeff(i) == ref.coeff(i)


# -- equations from terms ----------------------------------------------------------

def test_term_ratio_examples():
    assert term_ratio(entry("exp").term) == EXP
    cat = term_ratio(entry("catalan").term)
    assert cat.ratio == parse_rf("2*(m+1)/(2*m+1)") and cat.rhs == parse_rf("1/(2*m+1)^2")
    lan = term_ratio(entry("landau_companion").term)
    assert lan.ratio == parse_rf("-(2*m+1)^2/(4*(m+1)^2)") and lan.rhs == parse_rf("1")


def test_term_validation():
    with pytest.raises(ValueError):
        RamanujanTerm(parse_rf("1"), q=parse_rf("0"))
    with pytest.raises(ValueError):
        RamanujanTerm(parse_rf("1"), den_factorials=((0, 1),))
    with pytest.raises(ValueError):
        RamanujanTerm(parse_rf("1"), q=parse_rf("m"))


@pytest.mark.parametrize("name", ["catalan", "exp", "landau_companion", "lerch"])
def test_telescoping_defects(name):
    e = entry(name)
    b = dict(e.test_bindings[0]) if e.params else {}
    bound = e.term.bind(b)
    deq = e.deq.bind(b)
    mc = run_engine(deq, 2).corrections[-1]
    t = test_error(deq, mc).T
    n1, n2 = 1, 7
    lhs = sum(bound.weight(m) * t.evaluate({"m": m}) for m in range(n1, n2))
    rhs = (bound.weight(n1) * mc.evaluate(n1) - bound.weight(n2) * mc.evaluate(n2)
           - sum(bound.value(m) for m in range(n1, n2)))
    assert lhs == rhs


# -- the engine on exp ------------------------------------------------------------

@pytest.mark.parametrize("z", [2, Fraction(1, 3), -1])
def test_exp_corrections_and_decay(z):
    run = run_engine(EXP.bind({"z": z}), 3)
    for k, mc in enumerate(run.corrections):
        assert mc == exp_levels(z, k)
    assert [e.decay_order for e in run.errors] == [3, 5, 7, 9]
    assert [e.degree for e in run.errors] == [-3, -5, -7, -9]


def test_exp_initial_correction_form():
    mc = initial_correction(EXP.bind({"z": 2}))
    assert str(mc) == "1 + 2/(m - 1)"
    assert str(initial_correction(EXP.bind({"z": Fraction(1, 3)}))) == "1 + (1/3)/(m + 2/3)"


def test_leading_constant_sign():
    deq = EXP.bind({"z": 2})
    err = test_error(deq, initial_correction(deq))
    # T + C/m^K0 = O(m^-(K0+1))
    scaled = (err.T + RationalFunction.const(err.leading_constant) / RationalFunction(M ** 3))
    assert scaled.degree("m") < -3
    assert err.leading_constant == -4


def test_decay_strictly_improves_on_catalog_equations():
    for name in NAMES:
        e = entry(name)
        b = dict(e.test_bindings[0]) if e.params else {}
        orders = [t.decay_order for t in run_engine(e.deq.bind(b), 3).errors]
        assert all(x < y for x, y in zip(orders, orders[1:])), name


@pytest.mark.parametrize("name", NAMES)
def test_engine_reproduces_catalog_tails(name):
    e = entry(name)
    for b in (e.test_bindings or [{}])[:2]:
        run = run_engine(e.deq.bind(b), 3)
        for k, mc in enumerate(run.corrections):
            for m in (Fraction(7, 3), Fraction(11, 2), Fraction(9)):
                env = {**b, "x": m}
                assert mc.evaluate(m) == e.head.evaluate(env) + value_at_depth(e.cf_tail, k + 1, env)


def test_lerch_initial_level():
    z, alpha = Fraction(1, 2), Fraction(1)
    mc = initial_correction(entry("lerch").deq.bind({"z": z, "alpha": alpha}))
    lam, phi = mc.levels[0]
    assert lam == 1 / (1 - z)
    assert phi == M + (alpha + z / (1 - z))


def test_harmonic_equation_is_unsupported():
    with pytest.raises(UnsupportedEquationError) as info:
        run_engine(DifferenceEquation.from_strings("1", "1/(m+1)"), 3)
    assert HARMONIC_HINT in str(info.value)


def test_exact_solution_is_a_fixed_point():
    deq = DifferenceEquation.from_strings("0", "1/(m*(m+1))")
    run = run_engine(deq, 4)
    assert len(run.corrections) == 1 and run.errors[0].exact
    assert run.corrections[0].as_rf() == parse_rf("1/(m^2+m)")
    assert extend_correction(deq, run.corrections[0]) == run.corrections[0]


def test_zero_equation_sentinel():
    err = test_error(DifferenceEquation.from_strings("1", "0"), CorrectionFunction())
    assert err.exact and err.decay_order == float("inf")


def test_quasi_term():
    q = quasi_term(entry("exp").term, 3)
    assert q.R == parse_rf("1/m^3") and q.den_factorials == ((1, 0),)
    with pytest.raises(ValueError):
        quasi_term(entry("exp").term, 0)


# -- correction functions ---------------------------------------------------------

def test_correction_invariants():
    with pytest.raises(ValueError):
        CorrectionFunction(levels=((0, M),))
    with pytest.raises(ValueError):
        CorrectionFunction(levels=((1, M * 2),))
    with pytest.raises(ValueError):
        CorrectionFunction(levels=((1, Polynomial.const(1)),))


def test_correction_json_and_text():
    mc = exp_levels(Fraction(1, 3), 2)
    data = json.loads(json.dumps(mc.to_json()))
    assert data["levels"][1]["lambda"] == "1/3"
    assert CorrectionFunction.from_json(data) == mc
    assert str(mc) == "1 + (1/3)/(m + 2/3 + (1/3)/(m + 5/3 + (2/3)/(m + 8/3)))"
    assert mc.evaluate(2) == mc.as_rf().evaluate({"m": 2})


def test_correction_errors_shrink():
    term = entry("exp").term
    e = exp_series(1, 60)
    run = run_engine(EXP.bind({"z": 1}), 3)
    errs = [abs(correction_error(term, mc, 5, e, bindings={"z": 1})) for mc in run.corrections[1:]]
    assert errs[2] < errs[1] < errs[0]


def test_correction_error_of_exact_solution():
    term = RamanujanTerm(parse_rf("1/((m+1)*(m+2))"))      # sums to 1
    run = run_engine(term_ratio(term), 2)
    assert run.errors[-1].exact
    for n in (0, 1, 4, 9):
        assert correction_error(term, run.corrections[-1], n, 1) == 0


def test_catalan_initial_error_is_small():
    e = entry("catalan")
    mc = initial_correction(e.deq)
    # K = scale * sum t_m, so the error of the series for K itself is scale * E
    limit = catalan_constant(40) / e.scale
    assert abs(e.scale * Fraction(correction_error(e.term, mc, 0, limit))) < 1


# -- pattern guessing -------------------------------------------------------------

def test_exp_pattern_at_fixed_z():
    run = run_engine(EXP.bind({"z": 2}), 5)
    rule = guess_pattern(run.corrections)
    assert rule is not None
    for j in range(1, 8):
        lam, phi = rule.level(j)
        assert lam == 2 * j and phi == M + (j - 1)
    assert rule.level(0) == (2, M - 1)
    for k, mc in enumerate(run.corrections):
        assert rule.regenerate(k + 1) == mc


def test_parametric_exp_pattern():
    rules = {}
    for z in (2, Fraction(1, 3), -1, 3):
        rules[z] = guess_pattern(run_engine(EXP.bind({"z": z}), 5).corrections)
    rule = guess_parametric(rules, "z")
    assert rule is not None
    # lambda_j = j z and Phi_j = m + j + 1 - z hold for j >= 1 under the fitted rule
    for jj in range(1, 6):
        lam, phi = rule.level(jj, {"z": Fraction(5, 7)})
        assert lam == jj * Fraction(5, 7)
        assert phi == M + (jj + 1 - Fraction(5, 7))
    assert guess_parametric(dict(list(rules.items())[:2]), "z") is None


def test_constant_pattern():
    cs = [CorrectionFunction(levels=tuple((5, M + 1) for _ in range(k + 1))) for k in range(5)]
    rule = guess_pattern(cs)
    assert rule is not None and str(rule.lam) == "5"


def test_pattern_beyond_degree_cap_is_none():
    def lam(j):
        return Fraction(j**7 + 1)

    cs = [CorrectionFunction(levels=tuple((lam(j), M + 1) for j in range(k + 1))) for k in range(11)]
    assert guess_pattern(cs) is None


def test_pattern_needs_aligned_corrections():
    a = exp_levels(2, 3)
    assert guess_pattern([a] * 3) is None
    bad = [exp_levels(2, k) for k in range(4)] + [exp_levels(3, 4)]
    assert guess_pattern(bad) is None
