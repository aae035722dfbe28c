from decimal import Decimal
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from cfkit.errors import InconsistentSystemError, NonUniqueSolutionError, ParseError, PoleError
from cfkit.exact import (
    Polynomial, RationalFunction, as_fraction, format_decimal, gcd, mat_vec, parse_rational, parse_rf,
    solve_linear, solve_pinned, to_decimal, verify_identity,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
coeff_lists = st.lists(small, min_size=0, max_size=5)

X = Polynomial.var("x")
Y = Polynomial.var("y")


def upoly(cs, name="x"):
    return Polynomial.from_coeffs(cs, name)


def bipoly(cs):
    """sum c_ij x^i y^j from a flat list."""
    out = Polynomial()
    for k, c in enumerate(cs):
        out = out + (X ** (k % 3)) * (Y ** (k // 3)) * c
    return out


bipolys = st.lists(small, min_size=0, max_size=5).map(bipoly)


# -- rationals ------------------------------------------------------------------

@pytest.mark.parametrize("text,value", [
    ("3/4", Fraction(3, 4)), ("-6/8", Fraction(-3, 4)), ("0.125", Fraction(1, 8)),
    ("2", Fraction(2)), ("1e-3", Fraction(1, 1000)), (" 5 / -10 ", Fraction(-1, 2)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "abc", "1/2/3", "", "0x10"])
def test_parse_rational_rejects(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_as_fraction_refuses_floats():
    with pytest.raises(TypeError):
        as_fraction(0.1)
    assert as_fraction(Decimal("0.1")) == Fraction(1, 10)


@pytest.mark.parametrize("x,digits,text", [
    (Fraction(2, 3), 5, "0.66667"),
    (Fraction(1, 8), 2, "0.12"),          # half-even
    (Fraction(3, 8), 2, "0.38"),
    (Fraction(-1234567, 1000), 4, "-1235"),
    (Fraction(1, 10**12), 3, "1.00e-12"),
    (Fraction(999999, 1000), 3, "1.00e+3"),
    (Fraction(999999, 1000), 4, "1000"),
    (Fraction(0), 5, "0"),
])
def test_format_decimal(x, digits, text):
    assert format_decimal(x, digits) == text


@given(st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6).filter(bool),
       st.integers(1, 25))
def test_rounding_matches_decimal_module(x, digits):
    import decimal

    ctx = decimal.Context(prec=digits, rounding=decimal.ROUND_HALF_EVEN)
    ref = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    assert to_decimal(x, digits) == ref


# -- polynomials -----------------------------------------------------------------

@given(bipolys, bipolys, bipolys)
def test_polynomial_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial()


@given(bipolys, bipolys, small, small)
def test_evaluation_is_a_homomorphism(p, q, a, b):
    env = {"x": a, "y": b}
    assert (p * q).evaluate(env) == p.evaluate(env) * q.evaluate(env)
    assert (p + q).evaluate(env) == p.evaluate(env) + q.evaluate(env)


@given(coeff_lists, small)
def test_shift_matches_substitution(cs, h):
    p = upoly(cs)
    assert p.shift("x", h) == p.substitute("x", X + Polynomial.const(h))
    for t in (Fraction(0), Fraction(1, 3), Fraction(-2)):
        assert p.shift("x", h).evaluate({"x": t}) == p.evaluate({"x": t + h})


@given(bipolys)
def test_polynomial_json_roundtrip(p):
    assert Polynomial.from_json(p.to_json()) == p


@given(coeff_lists, coeff_lists, coeff_lists)
def test_gcd_against_sympy(a, b, c):
    pa, pb, pc = upoly(a), upoly(b), upoly(c)
    assume(not pc.is_zero())
    g = gcd(pa * pc, pb * pc)
    x = sympy.Symbol("x")

    def to_sym(p):
        return sympy.Poly([sympy.Rational(v.numerator, v.denominator)
                           for v in reversed(p.univariate_coeffs("x"))] or [0], x)

    ref = sympy.gcd(to_sym(pa * pc), to_sym(pb * pc))
    ours = to_sym(g) if not g.is_zero() else sympy.Poly(0, x)
    if ref.is_zero:
        assert g.is_zero()
    else:
        assert (ours.monic() - ref.monic()).is_zero


def test_multivariate_gcd():
    p = (X + Y) * (X - 2 * Y + 1)
    q = (X + Y) * (X * Y - 3)
    g = gcd(p, q)
    assert RationalFunction(g, X + Y).is_const()


def test_degree_conventions():
    assert Polynomial().degree("x") == float("-inf")
    assert (X**3 * Y + X).degree("x") == 3
    assert (X**3 * Y + X).degree("y") == 1


# -- rational functions -------------------------------------------------------------

@given(bipolys, bipolys, bipolys)
def test_rational_function_canonical_form(a, b, c):
    assume(not b.is_zero() and not c.is_zero())
    assert RationalFunction(a * c, b * c) == RationalFunction(a, b)


@given(bipolys, bipolys, bipolys, bipolys)
def test_field_operations_agree_with_fractions(a, b, c, d):
    assume(not b.is_zero() and not d.is_zero())
    f, g = RationalFunction(a, b), RationalFunction(c, d)
    for env in ({"x": Fraction(1, 3), "y": Fraction(2, 7)}, {"x": Fraction(-5, 2), "y": Fraction(3)}):
        try:
            fv, gv = f.evaluate(env), g.evaluate(env)
        except PoleError:
            continue
        assert (f + g).evaluate(env) == fv + gv
        assert (f * g).evaluate(env) == fv * gv
        if gv:
            assert (f / g).evaluate(env) == fv / gv


def test_pole_is_reported():
    with pytest.raises(PoleError):
        parse_rf("1/(x-1)").evaluate({"x": 1})


def test_substitute_and_shift():
    f = parse_rf("1/(k^2+1)")
    assert f.shift("k", 1) == parse_rf("1/(k^2+2*k+2)")
    assert f.substitute("k", Polynomial.var("k") * 2 - 1) == parse_rf("1/(4*k^2-4*k+2)")


# -- parser -----------------------------------------------------------------------

@pytest.mark.parametrize("text,expected", [
    ("2(m+1)", parse_rf("2*m+2")),
    ("(m+1)^2", parse_rf("m^2+2*m+1")),
    ("m**2", parse_rf("m^2")),
    ("-z/(1-z)^2", parse_rf("-z/((z-1)*(z-1))")),
    ("1/2/3", parse_rf("1/6")),
    ("2^-1", parse_rf("1/2")),
])
def test_parser(text, expected):
    assert parse_rf(text) == expected


@pytest.mark.parametrize("text", ["", "(m+1", "m+", "1/(m-m)", "m^(1/2)", "m^x", "3 $ 4"])
def test_parser_errors(text):
    with pytest.raises(ParseError):
        parse_rf(text)


def test_parser_restricts_variables():
    with pytest.raises(ParseError):
        parse_rf("m + q", variables=["m"])
    assert parse_rf("m + q", variables=["m", "q"]) == parse_rf("q + m")


# -- linear algebra ---------------------------------------------------------------

@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n),
                        st.lists(small, min_size=n, max_size=n))))
def test_solve_linear_residual(data):
    a, b = data
    try:
        x = solve_linear(a, b)
    except (NonUniqueSolutionError, InconsistentSystemError):
        assert sympy.Matrix(a).rank() < len(a)
        return
    assert mat_vec(a, x) == [Fraction(v) for v in b]


def test_solve_linear_errors():
    with pytest.raises(InconsistentSystemError):
        solve_linear([[1, 1], [2, 2]], [1, 3])
    with pytest.raises(NonUniqueSolutionError) as info:
        solve_linear([[1, 1], [2, 2]], [1, 2])
    assert info.value.free_columns == (1,)
    x, free = solve_pinned([[1, 1], [2, 2]], [1, 2])
    assert x == [1, 0] and free == (1,)


def test_overdetermined_consistent():
    assert solve_linear([[1, 0], [0, 1], [1, 1]], [2, 3, 5]) == [2, 3]


# -- identity testing (grid route vs canonical route) ---------------------------------

@given(bipolys, bipolys, bipolys, bipolys)
def test_identity_test_routes_agree(a, b, c, d):
    assume(not b.is_zero() and not d.is_zero())
    f, g = RationalFunction(a, b), RationalFunction(c, d)
    assert verify_identity(f, g, {}) == (f == g)
    assert verify_identity(f, f + 0, {})


def test_identity_detects_high_degree_difference():
    k = RationalFunction.var("k")
    f = k**7 - k
    assert not verify_identity(f, RationalFunction.const(0), {})
    assert verify_identity((k + 1) ** 2, k**2 + 2 * k + 1, {"k": 2})


def test_identity_with_poles_on_grid():
    f = parse_rf("1/(x - 1/3) + 1")
    g = parse_rf("(x + 2/3)/(x - 1/3)")
    assert verify_identity(f, g, {})
