import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfkit import _kernel_py
from cfkit.catalog import entry
from cfkit.catalog.oracles import exp_series
from cfkit.cfrac import (
    CFSpec, ModifyingSequence, adaptive_value, approximants, bauer_muir, classical_value,
    determinant_check, equivalence_transform, even_part, max_depth_from_env, phi_value,
    tail_error_bound, value_at_depth,
)
from cfkit.errors import ConvergenceError, PoleError, TransformError
from cfkit.exact import parse_rf

nonzero = st.fractions(min_value=-6, max_value=6, max_denominator=5).filter(bool)
anyval = st.fractions(min_value=-6, max_value=6, max_denominator=5)
elements = st.lists(st.tuples(nonzero, anyval), min_size=1, max_size=8)
nz_elements = st.lists(st.tuples(nonzero, nonzero), min_size=2, max_size=10)


def naive_value(b0, elems):
    tail = Fraction(0)
    for a, b in reversed(elems):
        tail = a / (b + tail)
    return b0 + tail


# -- kernel backends --------------------------------------------------------------

@given(st.lists(st.tuples(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6)), max_size=40),
       st.tuples(*[st.integers(-50, 50)] * 4))
def test_backends_agree(backend, pairs, state):
    betas = [p[0] for p in pairs]
    gammas = [p[1] for p in pairs]
    assert backend.advance(betas, gammas, state) == _kernel_py.advance(betas, gammas, state)
    assert backend.trajectory(betas, gammas, state) == _kernel_py.trajectory(betas, gammas, state)


def test_backend_handles_huge_integers(backend):
    big = 7**400
    state = (1, big, 0, 1)
    out = backend.advance([big, -big, 3], [big, 1, -(big**2)], state)
    assert out == _kernel_py.advance([big, -big, 3], [big, 1, -(big**2)], state)


# -- approximants ------------------------------------------------------------------

@given(anyval, elements)
def test_forward_recurrence_matches_backward_evaluation(active_backend, b0, elems):
    cf = CFSpec.from_elements(b0, elems)
    pairs = approximants(cf, len(elems))
    for n in range(len(elems) + 1):
        try:
            expected = naive_value(b0, elems[:n])
        except ZeroDivisionError:
            continue
        if pairs[n + 1].B != 0:
            assert pairs[n + 1].value() == expected


def test_classical_value_rounding():
    cf = CFSpec.from_strings("1", [("1", "2")])   # sqrt 2
    assert classical_value(cf, 60, digits=20) == "1.4142135623730950488"
    assert value_at_depth(cf, 3) == Fraction(17, 12)


def test_symbolic_rules_with_parameters():
    cf = CFSpec.from_strings("0", [("k*z", "x + k")], params=("z",))
    assert cf.params == ("x", "z")
    bound = cf.bind({"x": 1, "z": Fraction(1, 2)})
    assert bound.element(3) == (Fraction(3, 2), Fraction(4))


def test_spec_json_roundtrip():
    cf = entry("catalan").cf_tail
    again = CFSpec.from_json(json.loads(json.dumps(cf.to_json())))
    assert again == cf


def test_pole_reports_index():
    cf = CFSpec.from_strings("0", [("1", "1/(k-3)")])
    with pytest.raises(PoleError) as info:
        value_at_depth(cf, 5)
    assert info.value.index == 3


def test_terminating_fraction_is_exact():
    cf = CFSpec.from_strings("1", [("k - 3", "2")])
    res = adaptive_value(cf, digits=20)
    assert res.converged and res.depth == 2
    assert res.value == Fraction(-1, 3)


def test_adaptive_convergence_and_cap(monkeypatch):
    cf = entry("exp").cf_tail
    res = adaptive_value(cf, {"z": 1, "x": 0}, digits=40)
    assert res.converged
    assert abs(1 + res.value - exp_series(1, 45)) < Fraction(1, 10**40)
    slow = entry("catalan").cf_tail
    with pytest.raises(ConvergenceError) as info:
        adaptive_value(slow, {"x": 0}, digits=30, max_depth=64)
    assert info.value.result.depth == 64
    monkeypatch.setenv("CFKIT_MAX_DEPTH", "32")
    assert max_depth_from_env() == 32
    assert not adaptive_value(slow, {"x": 0}, digits=30, strict=False).converged
    monkeypatch.setenv("CFKIT_MAX_DEPTH", "lots")
    with pytest.raises(ValueError):
        max_depth_from_env()


# -- transform invariants ------------------------------------------------------------

@settings(max_examples=200)
@given(anyval, elements, st.lists(nonzero, min_size=8, max_size=8))
def test_equivalence_preserves_approximants(b0, elems, rs):
    cf = CFSpec.from_elements(b0, elems)
    r = ModifyingSequence((rs[-1],), (Fraction(1),) + tuple(rs[: len(elems)]))
    eq = equivalence_transform(cf, r)
    n = len(elems)
    p, q = approximants(cf, n), approximants(eq, n)
    scale = Fraction(1)
    for k in range(n + 1):
        if k:
            scale *= r.value(k).const_value()
        assert q[k + 1].A == scale * p[k + 1].A
        assert q[k + 1].B == scale * p[k + 1].B


def test_equivalence_requires_unit_start():
    cf = CFSpec.from_strings("0", [("1", "1")])
    with pytest.raises(TransformError):
        equivalence_transform(cf, ModifyingSequence.from_strings(["2"]))


@settings(max_examples=200)
@given(anyval, elements)
def test_determinant_identity(b0, elems):
    cf = CFSpec.from_elements(b0, elems)
    for m in range(len(elems)):
        assert determinant_check(cf, m)


@settings(max_examples=200)
@given(anyval, nz_elements)
def test_even_part_reproduces_even_approximants(b0, elems):
    cf = CFSpec.from_elements(b0, elems)
    n = len(elems) // 2
    try:
        ev = even_part(cf, canonical=True)
    except TransformError:
        return
    p, q = approximants(cf, 2 * n), approximants(ev, n)
    for k in range(n + 1):
        assert q[k + 1].A == p[2 * k + 1].A
        assert q[k + 1].B == p[2 * k + 1].B


@settings(max_examples=200)
@given(anyval, nz_elements)
def test_noncanonical_even_part_is_equivalent(b0, elems):
    cf = CFSpec.from_elements(b0, elems)
    n = len(elems) // 2
    ev = even_part(cf, canonical=False)
    p, q = approximants(cf, 2 * n), approximants(ev, n)
    for k in range(n + 1):
        if q[k + 1].B and p[2 * k + 1].B:
            assert q[k + 1].value() == p[2 * k + 1].value()


def test_symbolic_even_part_matches_numeric():
    cf = CFSpec.from_strings("x", [("k^2", "2*k + x")])
    ev = even_part(cf)
    for k in range(1, 6):
        a, b = ev.element(k)
        num = even_part(CFSpec.from_elements(
            Fraction(3), [(Fraction(j * j), Fraction(2 * j + 3)) for j in range(1, 13)]))
        assert (a.evaluate({"x": 3}), b.evaluate({"x": 3})) == num.bind({}).element(k)


def test_even_part_rejects_vanishing_denominators():
    cf = CFSpec.from_strings("0", [("1", "k - 2")])
    with pytest.raises(TransformError):
        even_part(cf)


@settings(max_examples=200)
@given(anyval, nz_elements, st.lists(anyval, min_size=11, max_size=11))
def test_bauer_muir_modified_approximants(b0, elems, rs):
    cf = CFSpec.from_elements(b0, elems)
    r = ModifyingSequence((rs[-1],), tuple(rs[: len(elems) + 1]))
    try:
        out, phis = bauer_muir(cf, r)
    except TransformError:
        return
    n = len(elems)
    p, q = approximants(cf, n), approximants(out, n - 1)
    for k in range(n):
        rk = r.value(k).const_value()
        assert q[k + 1].A == p[k + 1].A + p[k].A * rk
        assert q[k + 1].B == p[k + 1].B + p[k].B * rk


def test_bauer_muir_symbolic_phi():
    cf = entry("exp").certificates[0].cf
    r = entry("exp").certificates[0].factors
    _, phis = bauer_muir(cf, r)
    assert phis.value(5) == parse_rf("-(x+1)*z")
    assert phi_value(cf, r, 1) == parse_rf("-(x+1)*z")


def test_bauer_muir_rejects_vanishing_phi():
    cf = CFSpec.from_strings("0", [("k", "1")])
    r = ModifyingSequence.from_strings(["0"])
    # phi_k = a_k - r_{k-1}(b_k + r_k) = k is fine; force phi = 0 with r chosen so a = r(b + r)
    with pytest.raises(TransformError):
        bauer_muir(CFSpec.from_strings("0", [("2", "1")]), ModifyingSequence.from_strings(["1"]))
    assert bauer_muir(cf, r)[1].value(3) == parse_rf("3")


def test_tail_bound_dominates_true_error():
    cf = entry("exp").cf_tail
    env = {"z": 1, "x": 1}
    truth = exp_series(1, 60) - 2          # the tail at x = 1 with head 1 removed
    for m in range(0, 21):
        approx = value_at_depth(cf, m, env)
        assert abs(truth - approx) <= tail_error_bound(cf, m, env)


def test_tail_bound_needs_positive_elements():
    cf = entry("exp").cf_tail
    from cfkit.errors import NumericError

    with pytest.raises(NumericError):
        tail_error_bound(cf, 5, {"z": -1, "x": 1})
