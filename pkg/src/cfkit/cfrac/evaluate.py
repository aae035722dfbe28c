"""Forward-recurrence evaluation of continued fractions."""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .. import kernel
from ..errors import ConvergenceError, NumericError, TerminatedError
from ..exact.rational import format_ratio
from .spec import BoundCF, CFSpec

DEFAULT_MAX_DEPTH = 4096
START_DEPTH = 16


def max_depth_from_env() -> int:
    raw = os.environ.get("CFKIT_MAX_DEPTH")
    if not raw:
        return DEFAULT_MAX_DEPTH
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"CFKIT_MAX_DEPTH must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("CFKIT_MAX_DEPTH must be positive")
    return value


@dataclass(frozen=True)
class ApproximantPair:
    index: int
    A: Fraction
    B: Fraction

    def value(self) -> Fraction:
        if self.B == 0:
            raise NumericError(f"B_{self.index} = 0; approximant undefined")
        return self.A / self.B


def _bind(cf, bindings) -> BoundCF:
    if isinstance(cf, BoundCF):
        return cf
    return cf.bind(bindings)


def approximants(cf: CFSpec, n: int, bindings: Mapping | None = None) -> list[ApproximantPair]:
    """Exact (A_k, B_k) for k = -1..n by the forward three-term recurrence."""
    if n < 0:
        raise ValueError("depth must be >= 0")
    bound = _bind(cf, bindings)
    state, c0 = bound.start_state()
    betas, gammas, scales = bound.kernel_inputs(1, n + 1, c0)
    _, traj = kernel.trajectory(betas, gammas, state)
    out = [ApproximantPair(-1, Fraction(1), Fraction(0)), ApproximantPair(0, bound.b0, Fraction(1))]
    s = c0
    for k, ((p, q), c) in enumerate(zip(traj, scales), start=1):
        s *= c
        out.append(ApproximantPair(k, Fraction(p, s), Fraction(q, s)))
    return out


def raw_state(cf, depth: int, bindings=None):
    """Unreduced integers (P, Q) with A_depth / B_depth = P / Q."""
    bound = _bind(cf, bindings)
    state, c0 = bound.start_state()
    if depth == 0:
        return state[1], state[3]
    betas, gammas, _ = bound.kernel_inputs(1, depth + 1, c0)
    _, p, _, q = kernel.advance(betas, gammas, state)
    return p, q


def value_at_depth(cf, depth: int, bindings=None) -> Fraction:
    """The classical approximant A_depth / B_depth as an exact rational."""
    p, q = raw_state(cf, depth, bindings)
    if q == 0:
        raise NumericError(f"B_{depth} = 0; approximant undefined")
    return Fraction(p, q)


def classical_value(cf, depth: int, bindings=None, digits: int = 30) -> str:
    """A_depth / B_depth correctly rounded (half-even) to `digits` significant digits.

    The approximant is exact, so rounding happens once, on the exact rational.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    p, q = raw_state(cf, depth, bindings)
    if q == 0:
        raise NumericError(f"B_{depth} = 0; approximant undefined")
    return format_ratio(p, q, digits)


def fixed_point(p: int, q: int, decimals: int) -> Fraction:
    """floor(p/q * 10**decimals) / 10**decimals, without reducing p/q."""
    if q < 0:
        p, q = -p, -q
    return Fraction((p * 10**decimals) // q, 10**decimals)


@dataclass
class AdaptiveResult:
    value: Fraction       # fixed-point estimate, `decimals` places
    depth: int
    converged: bool
    change: Fraction      # |last - previous| at termination
    decimals: int


def adaptive_value(cf, bindings=None, digits: int = 30, max_depth: int | None = None,
                   start: int = START_DEPTH, strict: bool = True) -> AdaptiveResult:
    """Evaluate at depths start, 2*start, ... until two successive values agree to digits+5.

    Agreement is measured relative to max(1, |value|).  When max_depth is
    reached first, ConvergenceError is raised (carrying the last result) if
    `strict`, else the unconverged result is returned.
    """
    bound = _bind(cf, bindings)
    cap = max_depth if max_depth is not None else max_depth_from_env()
    decimals = digits + 20
    tol = Fraction(1, 10 ** (digits + 5))
    state, c_prev = bound.start_state()
    done = 0
    prev = None
    depth = min(start, cap)
    while True:
        try:
            betas, gammas, scales = bound.kernel_inputs(done + 1, depth + 1, c_prev)
        except TerminatedError as exc:
            # finite continued fraction: exact value at the last nonzero numerator
            n = exc.index - 1
            betas, gammas, scales = bound.kernel_inputs(done + 1, n + 1, c_prev)
            state = kernel.advance(betas, gammas, state)
            if state[3] == 0:
                raise NumericError(f"B_{n} = 0; value undefined") from exc
            v = Fraction(state[1], state[3])
            return AdaptiveResult(v, n, True, Fraction(0), decimals)
        state = kernel.advance(betas, gammas, state)
        if scales:
            c_prev = scales[-1]
        done = depth
        if state[3] == 0:
            cur = None
        else:
            cur = fixed_point(state[1], state[3], decimals)
        if cur is not None and prev is not None:
            change = abs(cur - prev)
            if change <= tol * max(1, abs(cur)):
                return AdaptiveResult(cur, depth, True, change, decimals)
        if depth >= cap:
            if cur is None:
                raise NumericError(f"B_{depth} = 0; value undefined")
            change = abs(cur - prev) if prev is not None else Fraction(0)
            result = AdaptiveResult(cur, depth, False, change, decimals)
            if strict:
                err = ConvergenceError(
                    f"no {digits}-digit agreement up to depth {depth} (last change {float(change):.3g})")
                err.result = result
                raise err
            return result
        prev = cur
        depth = min(depth * 2, cap)


def tail_error_bound(cf, m: int, bindings=None) -> Fraction:
    """prod_{k<=m+1} a_k / (B_{m+1} B_m), an upper bound on |value - A_m/B_m|.

    Valid when every a_k and b_k (1 <= k <= m+1) is positive.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    bound = _bind(cf, bindings)
    prod = Fraction(1)
    for k in range(1, m + 2):
        a, b = bound.element(k)
        if a <= 0 or b <= 0:
            raise NumericError(f"element {k} is not positive (a={a}, b={b}); bound does not apply")
        prod *= a
    pairs = approximants(bound, m + 1)
    b_m, b_m1 = pairs[m + 1].B, pairs[m + 2].B
    return prod / (b_m1 * b_m)


def determinant_check(cf, m: int, bindings=None) -> bool:
    """A_{m+1}/B_{m+1} - A_m/B_m == (-1)^m prod a_k / (B_{m+1} B_m), exactly.

    Checked in the cross-multiplied form A_{m+1}B_m - A_m B_{m+1} = (-1)^m prod a_k,
    which stays meaningful when some B vanishes and is equivalent otherwise.
    """
    bound = _bind(cf, bindings)
    pairs = approximants(bound, m + 1)
    pm, pm1 = pairs[m + 1], pairs[m + 2]
    prod = Fraction(1)
    for k in range(1, m + 2):
        prod *= bound.element(k)[0]
    sign = -1 if m % 2 else 1
    if pm1.A * pm.B - pm.A * pm1.B != sign * prod:
        return False
    if pm.B and pm1.B:
        return pm1.A / pm1.B - pm.A / pm.B == sign * prod / (pm1.B * pm.B)
    return True
