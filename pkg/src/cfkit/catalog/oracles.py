"""Reference values computed without any continued fraction.

Every routine returns an exact rational within 10**-(digits + GUARD) of the
true value, using series with explicit truncation bounds, integer
fixed-point iterations, or (for one constant) numerical quadrature.
"""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from ..errors import ConvergenceError, DomainError

GUARD = 10


def _eps(digits: int) -> Fraction:
    return Fraction(1, 10 ** (digits + GUARD))


def _mpf_fraction(x) -> Fraction:
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(man) * Fraction(2) ** exp


# -- pi and square roots -------------------------------------------------------

def arctan_inverse(n: int, digits: int) -> Fraction:
    """arctan(1/n) for an integer n >= 2 by its alternating Taylor series.

    Terms decrease, so the error is below the first omitted term.
    """
    eps = _eps(digits)
    total, k, power = Fraction(0), 0, Fraction(1, n)
    n2 = n * n
    while True:
        term = power / (2 * k + 1)
        if term < eps:
            return total
        total += term if k % 2 == 0 else -term
        power /= n2
        k += 1


def machin_pi(digits: int) -> Fraction:
    """pi = 16 arctan(1/5) - 4 arctan(1/239)."""
    return 16 * arctan_inverse(5, digits + 2) - 4 * arctan_inverse(239, digits + 2)


def sqrt_fraction(x: Fraction, digits: int) -> Fraction:
    """floor(sqrt(x) * 10**p) / 10**p with p = digits + GUARD."""
    x = Fraction(x)
    if x < 0:
        raise DomainError("square root of a negative number")
    p = digits + GUARD
    scaled = x.numerator * 10 ** (2 * p) // x.denominator
    return Fraction(math.isqrt(scaled), 10**p)


# -- alternating series ---------------------------------------------------------

def cvz_alternating(a, digits: int) -> Fraction:
    """sum_{k>=0} (-1)^k a(k) for a totally monotone (Hausdorff moment) sequence.

    Cohen-Rodriguez Villegas-Zagier acceleration in exact rationals.  The
    normalizer d_n = T_n(3) is an integer, and the error is at most
    2 a(0) / d_n, which fixes n.
    """
    a0 = Fraction(a(0))
    target = _eps(digits)
    n, d_prev, d = 1, 1, 3
    while Fraction(2) * abs(a0) / d > target:
        d_prev, d = d, 6 * d - d_prev
        n += 1
    b, c, s = Fraction(-1), Fraction(-d), Fraction(0)
    for k in range(n):
        c = b - c
        s += c * Fraction(a(k))
        b = b * (k + n) * (k - n) / ((k + Fraction(1, 2)) * (k + 1))
    return s / d


def catalan_constant(digits: int) -> Fraction:
    """K = sum (-1)^m / (2m+1)^2."""
    return cvz_alternating(lambda k: Fraction(1, (2 * k + 1) ** 2), digits)


def log2_series(digits: int) -> Fraction:
    """ln 2 = sum_{k>=1} 1/(k 2^k); tail after K terms is below 2^-K / (K+1)."""
    eps = _eps(digits)
    total, k = Fraction(0), 1
    while True:
        total += Fraction(1, k * 2**k)
        if Fraction(1, (k + 1) * 2**k) < eps:
            return total
        k += 1


# -- exponential ----------------------------------------------------------------

def exp_series(z, digits: int) -> Fraction:
    """sum z^k/k!; once k + 1 > 2|z| the tail is below twice the next term."""
    z = Fraction(z)
    eps = _eps(digits)
    total, term, k = Fraction(0), Fraction(1), 0
    while True:
        total += term
        k += 1
        term = term * z / k
        if k + 1 > 2 * abs(z) and 2 * abs(term) < eps:
            return total


# -- Lerch transcendent at s = 1 ------------------------------------------------------

def lerch_phi1(z, alpha, digits: int) -> Fraction:
    """Phi(z, 1, alpha) = sum z^m / (m + alpha) for real -1 <= z < 1, alpha > 0."""
    z, alpha = Fraction(z), Fraction(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if not -1 <= z < 1:
        raise DomainError("the series oracle needs -1 <= z < 1")
    if z == -1:
        return cvz_alternating(lambda k: 1 / (k + alpha), digits)
    if z == 0:
        return 1 / alpha
    eps = _eps(digits)
    total, power, m = Fraction(0), Fraction(1), 0
    q = abs(z)
    while True:
        total += power / (m + alpha)
        power *= z
        m += 1
        # |tail| <= |z|^m / ((m + alpha)(1 - |z|))
        if abs(power) / ((m + alpha) * (1 - q)) < eps:
            return total


# -- arcsine-type series ------------------------------------------------------

def arcsine_series(w, digits: int) -> Fraction:
    """g(w) = sum w^m (m!)^2 / ((2m)! (2m+1)) for 0 < w < 4.

    Consecutive terms shrink by w(m+1)/(2(2m+3)) < w/4, giving a geometric tail bound.
    """
    w = Fraction(w)
    if not 0 < w < 4:
        raise DomainError("need 0 < w < 4")
    eps = _eps(digits)
    ratio = w / 4
    total, c, m = Fraction(0), Fraction(1), 0   # c = w^m (m!)^2 / (2m)!
    while True:
        term = c / (2 * m + 1)
        total += term
        c = c * w * (m + 1) / (2 * (2 * m + 1))
        m += 1
        if c / (2 * m + 1) / (1 - ratio) < eps:
            return total


def arcsine_closed_form(w: int, digits: int) -> Fraction:
    """g(1), g(2), g(3) = 2pi/(3 sqrt 3), pi/2, 4pi/(3 sqrt 3) with Machin's pi."""
    pi = machin_pi(digits + 2)
    if w == 2:
        return pi / 2
    if w not in (1, 3):
        raise DomainError("closed forms are available for w = 1, 2, 3")
    s3 = sqrt_fraction(Fraction(3), digits + 4)
    return (2 if w == 1 else 4) * pi / (3 * s3)


# -- AGM ----------------------------------------------------------------------

def agm(a, b, digits: int) -> Fraction:
    """Arithmetic-geometric mean in integer fixed point (quadratic convergence)."""
    p = digits + GUARD + 5
    one = 10**p
    x = Fraction(a).numerator * one // Fraction(a).denominator
    y = Fraction(b).numerator * one // Fraction(b).denominator
    for _ in range(200):
        if abs(x - y) <= 2:
            return Fraction(x, one)
        x, y = (x + y) // 2, math.isqrt(x * y)
    raise ConvergenceError("AGM did not converge")


def landau_companion(digits: int) -> Fraction:
    """L = 1/AGM(1, sqrt 2), from Gamma(1/4)^2 = (2 pi)^(3/2) / AGM(1, sqrt 2)."""
    return 1 / agm(1, sqrt_fraction(Fraction(2), digits + 5), digits + 2)


def landau_companion_cvz(digits: int) -> Fraction:
    """Second route: the defining alternating series, accelerated.

    a_m = (C(2m, m)/4^m)^2 is a product of moment sequences, hence a moment sequence.
    """
    cache = [Fraction(1)]

    def a(k):
        while len(cache) <= k:
            j = len(cache)
            cache.append(cache[-1] * Fraction(2 * j - 1, 2 * j) ** 2)
        return cache[k]

    return cvz_alternating(a, digits)


# -- companion of Catalan's constant -----------------------------------------------

def catalan_companion(digits: int) -> Fraction:
    """G = sum 4^m (m!)^2 / ((2m)! (4m+1)^2) by double-exponential quadrature.

    With 1/(4m+1)^2 = int_0^1 (-ln u) u^(4m) du and the generating function
    sum 4^m (m!)^2/(2m)! y^m = 1/(1-y) + sqrt(y) arcsin(sqrt y)/(1-y)^(3/2),
    G = int_0^1 (-ln u) [1/(1-u^4) + u^2 arcsin(u^2)/(1-u^4)^(3/2)] du.
    """
    dps = digits + GUARD + 10
    with mpmath.workdps(dps):
        def f(u):
            v = 1 - u**4
            return -mpmath.log(u) * (1 / v + u**2 * mpmath.asin(u**2) / v**mpmath.mpf(1.5))

        val = mpmath.quad(f, [0, mpmath.mpf(1) / 2, 1])
        return _mpf_fraction(val)


def catalan_companion_partial(n: int) -> Fraction:
    """Exact partial sum of G's defining series (a slowly convergent lower bound)."""
    total, c = Fraction(0), Fraction(1)
    for m in range(n):
        total += c / (4 * m + 1) ** 2
        c = c * 4 * (m + 1) ** 2 / ((2 * m + 1) * (2 * m + 2))
    return total


# -- Mathieu-type series ----------------------------------------------------------

def mathieu_series(r, tol=Fraction(1, 10**13), dps: int = 40):
    """S(r) = sum_{m>=1} 2m/(m^2+r^2)^2 with an integral tail bracket.

    For M >= r the summand decreases, so the tail beyond M lies between
    1/((M+1)^2 + r^2) and 1/(M^2 + r^2).  Returns (estimate, half-width).
    """
    r = Fraction(r)
    if r <= 0:
        raise DomainError("r must be positive")
    # half-width of the bracket ~ 1/M^3
    big_m = max(int(r) + 2, int(math.ceil(float(1 / tol) ** (1 / 3))) + 1)
    with mpmath.workdps(dps):
        rr = mpmath.mpf(r.numerator) / r.denominator
        r2 = rr * rr
        s = mpmath.fsum(2 * m / (m * m + r2) ** 2 for m in range(1, big_m + 1))
        hi = 1 / (big_m**2 + r2)
        lo = 1 / ((big_m + 1) ** 2 + r2)
        est = s + (hi + lo) / 2
        half = (hi - lo) / 2
        return _mpf_fraction(est), _mpf_fraction(half)
