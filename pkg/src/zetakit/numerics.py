"""Arbitrary-precision kernels: Gamma, digamma, Bernoulli numbers, the
generalized binomial, the scaled Bessel function e^(-2t) I0(2t), and a
numeric Riemann zeta via Euler-Maclaurin summation with a certified tail.

Gamma and digamma are delegated to mpmath (whose gamma uses precisely the
recurrence-shift plus Stirling-series scheme appropriate at high precision);
everything else is implemented here because downstream identities consume
exact rationals or certified bounds.

All functions are pure.  The only shared mutable state is the Bernoulli memo
table, which is guarded by a lock.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb
from typing import Optional, Tuple

from mpmath.ctx_mp import MPContext

from .core import (
    DomainError,
    HPComplex,
    HPReal,
    IndeterminateError,
    NoConvergence,
    PoleError,
    PrecisionContext,
    get_context,
)

__all__ = [
    "gamma",
    "digamma",
    "bernoulli",
    "binomial_real",
    "bessel_i0_scaled",
    "riemann_zeta_numeric",
]


# --------------------------------------------------------------------------
# pole bookkeeping

def _near_nonpositive_integer(mp, z, radius) -> Optional[int]:
    """Return the nonpositive integer within ``radius`` of z, if any."""
    if abs(z.imag) > radius:
        return None
    x = z.real
    n = int(mp.nint(x))
    if n <= 0 and abs(x - n) <= radius:
        return n
    return None


def _boosted(ctx: PrecisionContext, extra: int) -> MPContext:
    mp = MPContext()
    mp.prec = ctx.working_bits + extra
    return mp


# --------------------------------------------------------------------------
# Gamma and digamma

def gamma(s, ctx: Optional[PrecisionContext] = None) -> HPComplex:
    """Gamma(s) for complex s with an absolute error bound <= target_tol.

    Raises PoleError at (or within snapping distance of) the nonpositive
    integers, and NoConvergence if the tolerance cannot be met even after
    boosting the working precision.
    """
    ctx = get_context(ctx)
    z = ctx.mpc(s)
    if _near_nonpositive_integer(ctx.mp, z, ctx.pole_radius) is not None:
        raise PoleError(f"gamma pole at {z}")
    extra = 0
    while True:
        mp = ctx.mp if extra == 0 else _boosted(ctx, extra)
        g = mp.gamma(z)
        err = abs(g) * mp.mpf(2) ** (8 - mp.prec)
        if err <= ctx.tol:
            return HPComplex(g, err)
        if extra >= 1024:
            raise NoConvergence("gamma: tolerance unreachable at this magnitude")
        extra = max(64, 2 * extra)


def digamma(s, ctx: Optional[PrecisionContext] = None) -> HPReal:
    """psi_0(s) for real s, accurate to the context tolerance."""
    ctx = get_context(ctx)
    x = ctx.mpf(s)
    if _near_nonpositive_integer(ctx.mp, ctx.mp.mpc(x), ctx.pole_radius) is not None:
        raise PoleError(f"digamma pole at {x}")
    extra = 0
    while True:
        mp = ctx.mp if extra == 0 else _boosted(ctx, extra)
        d = mp.digamma(x)
        err = (abs(d) + 1) * mp.mpf(2) ** (8 - mp.prec)
        if err <= ctx.tol:
            return HPReal(d, err)
        if extra >= 1024:
            raise NoConvergence("digamma: tolerance unreachable at this magnitude")
        extra = max(64, 2 * extra)


# --------------------------------------------------------------------------
# Bernoulli numbers (exact, memoized)

_BERN_LOCK = threading.Lock()
_BERN_EVEN: list[Fraction] = [Fraction(1)]  # B_0, B_2, B_4, ...


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k (convention B_1 = -1/2).

    Even-index values come from the defining recurrence
    sum_{j=0}^{k} C(k+1, j) B_j = 0; odd indices above 1 vanish.
    """
    if k < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    if k == 1:
        return Fraction(-1, 2)
    if k % 2 == 1:
        return Fraction(0)
    half = k // 2
    with _BERN_LOCK:
        while len(_BERN_EVEN) <= half:
            m = len(_BERN_EVEN)
            n = 2 * m
            acc = Fraction(n + 1, -2)  # the B_1 term C(n+1,1) * (-1/2)
            for j in range(m):
                acc += comb(n + 1, 2 * j) * _BERN_EVEN[j]
            _BERN_EVEN.append(-acc / (n + 1))
        return _BERN_EVEN[half]


def _bern_mpf(mp, k: int):
    b = bernoulli(k)
    return mp.mpf(b.numerator) / b.denominator


# --------------------------------------------------------------------------
# generalized binomial coefficient

def _as_exact_integer(x) -> Optional[int]:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else None
    if isinstance(x, float):
        return int(x) if x.is_integer() else None
    try:
        if x == int(x):
            return int(x)
    except (TypeError, ValueError, OverflowError):
        return None
    return None


def _integer_binomial(a: int, b: int) -> Fraction:
    """Limit value of the Gamma-quotient binomial at integer arguments.

    Pole counting on Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1)): more denominator
    poles than numerator poles force the limit 0; matched poles cancel to the
    classical finite values.
    """
    if b >= 0:
        if a >= b:
            return Fraction(comb(a, b))
        if a >= 0:
            return Fraction(0)  # Gamma(a-b+1) pole downstairs only
        # a < 0 <= b: falling factorial, poles cancel one for one
        return Fraction((-1) ** b * comb(b - a - 1, b))
    # b < 0
    if a >= 0:
        return Fraction(0)  # Gamma(b+1) pole downstairs only
    if a < b:
        return Fraction(0)  # two poles downstairs, one upstairs
    # b <= a < 0: matched poles, reflect to nonnegative entries
    return Fraction((-1) ** (a - b) * comb(-b - 1, a - b))


def binomial_real(a, b, ctx: Optional[PrecisionContext] = None) -> HPReal:
    """binomial(a, b) = Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1)) for real a, b.

    Integer arguments take the exact limit path (0 with the exact flag when
    pole cancellation forces it).  Raises IndeterminateError when the
    numerator has a pole that the denominator cannot cancel.
    """
    ctx = get_context(ctx)
    mp = ctx.mp
    r = ctx.pole_radius

    def snap_int(v) -> Optional[int]:
        iv = _as_exact_integer(v)
        if iv is not None:
            return iv
        x = ctx.mpf(v)
        n = int(mp.nint(x))
        return n if abs(x - n) <= r else None

    ia, ib = snap_int(a), snap_int(b)
    if ia is not None and ib is not None:
        q = _integer_binomial(ia, ib)
        return HPReal(mp.convert(q), mp.zero, exact=True)
    x, y = ctx.mpf(a), ctx.mpf(b)
    if ia is not None and ia < 0:
        # Gamma(a+1) pole upstairs; with b non-integer neither denominator
        # argument can be a nonpositive integer, so nothing cancels it.
        raise IndeterminateError("binomial pole does not cancel")
    if any(
        _near_nonpositive_integer(mp, mp.mpc(v), r) is not None
        for v in (y + 1, x - y + 1)
    ):
        # denominator pole with a finite numerator: the quotient vanishes
        return HPReal(mp.zero, mp.zero, exact=True)
    g1 = gamma(x + 1, ctx)
    g2 = gamma(y + 1, ctx)
    g3 = gamma(x - y + 1, ctx)
    v = (g1.value / (g2.value * g3.value)).real
    rel = (
        g1.err / abs(g1.value) + g2.err / abs(g2.value) + g3.err / abs(g3.value)
        + mp.mpf(2) ** (4 - ctx.working_bits)
    )
    err = abs(v) * rel
    if err > ctx.tol:
        bmp = _boosted(ctx, 160)
        v = (bmp.gamma(x + 1) / (bmp.gamma(y + 1) * bmp.gamma(x - y + 1))).real
        err = abs(v) * bmp.mpf(2) ** (10 - bmp.prec)
        if err > ctx.tol:
            raise NoConvergence("binomial_real: tolerance unreachable at this magnitude")
    return HPReal(v, err)


# --------------------------------------------------------------------------
# scaled Bessel e^{-2t} I0(2t)

def _i0e_raw(mp, t, switch: int) -> Tuple:
    """(value, error bound) of e^{-2t} I0(2t) at mpf t >= 0.

    Power series for t <= switch (all terms positive, certified geometric
    tail); descending asymptotic series above, with the remainder estimated
    as twice the first omitted term.
    """
    if t == 0:
        return mp.one, mp.zero
    eps = mp.mpf(2) ** (4 - mp.prec)
    if t <= switch:
        # I0(2t) = sum t^{2k} / (k!)^2
        t2 = t * t
        term = mp.one
        acc = mp.one
        k = 0
        while True:
            k += 1
            term = term * t2 / (k * k)
            acc += term
            ratio = t2 / ((k + 1) * (k + 1))
            if term < acc * eps and ratio < mp.mpf(1) / 2:
                tail = term * ratio / (1 - ratio)
                break
            if k > 100000:
                raise NoConvergence("bessel_i0_scaled power series stalled")
        damp = mp.exp(-2 * t)
        v = damp * acc
        return v, damp * tail + abs(v) * eps * (k + 4)
    # asymptotic: e^{-2t} I0(2t) ~ (4 pi t)^{-1/2} sum_k b_k t^{-k},
    # b_0 = 1, b_k = b_{k-1} (2k-1)^2 / (16 k)
    acc = mp.one
    term = mp.one
    k = 0
    prev = None
    while True:
        k += 1
        term = term * (2 * k - 1) ** 2 / (mp.mpf(16) * k) / t
        if prev is not None and abs(term) > prev:
            break  # divergent zone reached; stop at the smallest term
        acc += term
        prev = abs(term)
        if abs(term) < acc * eps or k > 200:
            k += 1
            term = term * (2 * k - 1) ** 2 / (mp.mpf(16) * k) / t
            break
    front = 1 / mp.sqrt(4 * mp.pi * t)
    v = front * acc
    return v, front * 2 * abs(term) + abs(v) * eps * 8


def bessel_i0_scaled(t, ctx: Optional[PrecisionContext] = None) -> HPReal:
    """e^{-2t} I0(2t) for t >= 0, within the context tolerance.

    The regime switch sits at max(30, precision_bits/2): below it the power
    series carries a certified geometric tail, above it the asymptotic series
    (~ 1/sqrt(4 pi t)) terminates far below the tolerance.
    """
    ctx = get_context(ctx)
    tt = ctx.mpf(t)
    if tt < 0:
        raise DomainError("bessel_i0_scaled requires t >= 0")
    if tt == 0:
        return HPReal(ctx.mp.one, ctx.mp.zero, exact=True)
    switch = max(30, ctx.precision_bits // 2)
    v, err = _i0e_raw(ctx.mp, tt, switch)
    if err > ctx.tol:
        mp = _boosted(ctx, 128)
        v, err = _i0e_raw(mp, mp.convert(tt), switch)
        if err > ctx.tol:
            raise NoConvergence("bessel_i0_scaled: tolerance not met")
    return HPReal(v, err)


# --------------------------------------------------------------------------
# Riemann zeta by Euler-Maclaurin

def _em_zeta_raw(mp, s, tol, max_terms: int) -> Tuple:
    """zeta(s) for Re(s) >= -1/2, s != 1, with a certified remainder bound.

    zeta(s) = sum_{k<N} k^-s + N^{1-s}/(s-1) + N^-s/2
              + sum_{j=1}^{M} B_{2j}/(2j)! (s)_{2j-1} N^{-s-2j+1} + R,
    |R| <= |B_{2M+2}/(2M+2)! (s)_{2M+1} N^{-s-2M-1}| (s+2M+1)/(sigma+2M+1).
    """
    sigma = s.real
    N = max(12, int(0.34 * mp.prec), int(abs(s.imag)) + 8)
    M = max(8, int(0.34 * mp.prec))
    while True:
        poch = mp.mpc(1)
        for i in range(2 * M + 1):
            poch *= s + i
        bound = (
            abs(_bern_mpf(mp, 2 * M + 2)) / mp.factorial(2 * M + 2)
            * abs(poch) * mp.power(N, -sigma - 2 * M - 1)
            * abs(s + 2 * M + 1) / (sigma + 2 * M + 1)
        )
        if bound <= tol:
            break
        if N > max_terms or M > 4 * mp.prec:
            raise NoConvergence("Euler-Maclaurin zeta: term budget exhausted")
        N = int(N * 1.5) + 1
        M += 8
    acc = mp.mpc(0)
    for k in range(1, N):
        acc += mp.power(k, -s)
    acc += mp.power(N, 1 - s) / (s - 1) + mp.power(N, -s) / 2
    poch = s
    npow = mp.power(N, -s - 1)
    n2 = mp.mpf(N) ** 2
    for j in range(1, M + 1):
        acc += _bern_mpf(mp, 2 * j) / mp.factorial(2 * j) * poch * npow
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        npow /= n2
    # the k^-s partial sums can exceed |acc| when phases cancel, so the
    # rounding mass is bounded by the term count times the largest magnitude
    round_err = (abs(acc) + mp.mpf(N) ** (1 - min(sigma, 0)) + 1) \
        * mp.mpf(2) ** (10 - mp.prec) * (N + M)
    return acc, bound + round_err


def riemann_zeta_numeric(s, ctx: Optional[PrecisionContext] = None) -> HPComplex:
    """zeta(s) near the real axis, s != 1, within the context tolerance.

    Euler-Maclaurin for Re(s) >= -1/2 with an adaptively chosen order;
    arguments left of that are reflected through the functional equation
    zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s), which makes the
    trivial zeros at the negative even integers exact.
    """
    ctx = get_context(ctx)
    mp = ctx.mp
    z = ctx.mpc(s)
    if abs(z - 1) <= ctx.pole_radius:
        raise PoleError("zeta pole at s = 1")
    if z.real >= mp.mpf(-1) / 2:
        v, err = _em_zeta_raw(mp, z, ctx.tol / 2, ctx.max_terms)
        return HPComplex(v, err)
    if z.imag == 0 and mp.isint(z.real / 2):
        return HPComplex(mp.mpc(0), mp.zero)  # trivial zero, exactly
    w, werr = _em_zeta_raw(mp, 1 - z, ctx.tol / 4, ctx.max_terms)
    pref = mp.power(2, z) * mp.power(mp.pi, z - 1) * mp.sinpi(z / 2) * mp.gamma(1 - z)
    v = pref * w
    err = abs(pref) * werr + abs(v) * mp.mpf(2) ** (12 - mp.prec)
    if err > ctx.tol:
        raise NoConvergence("zeta reflection: tolerance not met")
    return HPComplex(v, err)
