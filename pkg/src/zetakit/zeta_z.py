"""The spectral zeta function of the integer lattice and its companion Z(s).

Three independent evaluation routes are provided and cross-checked:

* ``zeta_z_closed``  -- the Gamma closed form 4^(-s) Gamma(1/2-s) /
  (sqrt(pi) Gamma(1-s)), with exact integer paths at the nonpositive
  integers (central binomial coefficients) and exact zeros at the positive
  integers;
* ``zeta_z_product`` -- the infinite product prod_k (k-s)^2 / (k (k-2s)),
  truncated with a certified tail computed from the Hurwitz-zeta values of
  its logarithm;
* ``zeta_z_mellin``  -- direct quadrature of the heat-trace Mellin integral
  on its convergence strip 0 < Re(s) < 1/2.

Derivative values follow the digamma formula
zeta'(s) = zeta(s) (-psi0(1/2-s) - 2 log 2 + psi0(1-s)), with exact rational
paths at the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Optional, Tuple

from .core import (
    DomainError,
    EvalResult,
    HPComplex,
    NeedsLimitInterpretation,
    NoConvergence,
    PoleError,
    PrecisionContext,
    complex_result,
    exact_result,
    get_context,
)
from . import numerics
from .quadrature import heat_mellin_integral

__all__ = [
    "ZetaZMethod",
    "ZetaZEval",
    "evaluate_zeta_z",
    "zeta_z_closed",
    "zeta_z_product",
    "zeta_z_mellin",
    "big_z",
    "zeta_z_deriv",
    "zeta_z_deriv_at_positive_integer",
]


class ZetaZMethod(Enum):
    CLOSED_FORM = "closed-form"
    PRODUCT = "product"
    MELLIN_QUADRATURE = "quadrature"


@dataclass(frozen=True)
class ZetaZEval:
    """One evaluation: argument, result, and the route that produced it."""

    s: HPComplex
    result: EvalResult
    method: ZetaZMethod


def _classify_lattice(ctx: PrecisionContext, z) -> Optional[Tuple[str, int]]:
    """Snap z to the integer/half-integer lattice within the pole radius.

    Returns ('int', n) or ('half', k) with the half-integer being k/2 (k odd),
    or None when z is safely off the lattice.
    """
    mp = ctx.mp
    r = ctx.pole_radius
    if abs(z.imag) > r:
        return None
    x = z.real
    n = int(mp.nint(x))
    if abs(x - n) <= r:
        return ("int", n)
    k = int(mp.nint(2 * x))
    if k % 2 != 0 and abs(x - mp.mpf(k) / 2) <= r:
        return ("half", k)
    return None


def zeta_z_closed(s, ctx: Optional[PrecisionContext] = None, *,
                  use_exact_paths: bool = True) -> EvalResult:
    """Closed-form evaluation 4^(-s) pi^(-1/2) Gamma(1/2-s) / Gamma(1-s).

    Nonpositive integers return the exact central binomial coefficient
    C(-2s, -s); positive integers return an exact zero flagged as a simple
    zero; positive half-integers raise PoleError.  ``use_exact_paths=False``
    forces the generic Gamma route (useful for cross-checking the exact
    values against the analytic continuation).
    """
    ctx = get_context(ctx)
    mp = ctx.mp
    z = ctx.mpc(s)
    cls = _classify_lattice(ctx, z)
    if cls is not None:
        kind, k = cls
        if kind == "half" and k > 0:
            raise PoleError(f"zeta_Z has a pole at s = {k}/2")
        if kind == "int" and use_exact_paths:
            if k <= 0:
                return exact_result(ctx, Fraction(comb(-2 * k, -k)), "closed-form")
            return exact_result(ctx, Fraction(0), "closed-form", note="simple-zero")
    g1 = numerics.gamma(mp.mpf(1) / 2 - z, ctx)
    g2 = numerics.gamma(1 - z, ctx)
    v = mp.power(4, -z) / mp.sqrt(mp.pi) * g1.value / g2.value
    rel = g1.err / abs(g1.value) + g2.err / abs(g2.value) + mp.mpf(2) ** (6 - mp.prec)
    return complex_result(ctx, v, abs(v) * rel, False, "closed-form")


def zeta_z_product(s, ctx: Optional[PrecisionContext] = None, *,
                   terms: Optional[int] = None) -> EvalResult:
    """Truncated product prod_{k<=K} (k-s)^2 / (k (k-2s)) with certified tail.

    The tail log sum_{k>K} log-factor expands as
    sum_{m>=2} ((2^m - 2)/m) s^m zeta(m, K+1); adding those corrections up to
    an order whose geometric remainder bound drops below the tolerance gives
    a certified absolute error.  Positive integers and half-integers (zeros
    and poles of the product) raise NeedsLimitInterpretation.
    """
    ctx = get_context(ctx)
    mp = ctx.mp
    z = ctx.mpc(s)
    cls = _classify_lattice(ctx, z)
    if cls is not None and cls[1] > 0:
        raise NeedsLimitInterpretation(
            "product degenerates at positive integers and half-integers")
    if z.imag == 0:
        z = z.real  # keep the product in real arithmetic when possible
    absz = abs(z)
    K = terms if terms is not None else max(256, int(4 * absz) + 16)
    tol = ctx.tol
    while True:
        if K > ctx.max_terms:
            raise NoConvergence("product truncation exceeds max_terms")
        P = mp.one
        for k in range(1, K + 1):
            P *= (k - z) ** 2 / (k * (k - 2 * z))
        q = 2 * absz / K
        if q < 1:
            # correction terms; remainder after m <= M is bounded by
            # K q^(M+1) / ((M+1) M (1-q)), using zeta(m, K+1) <= K^(1-m)/(m-1)
            L = mp.zero
            zpow = z * z
            M = 1
            while True:
                M += 1
                L += mp.mpf(2 ** M - 2) / M * zpow * mp.zeta(M, K + 1)
                zpow *= z
                R = K * q ** (M + 1) / ((M + 1) * M * (1 - q))
                if abs(P) * mp.expm1(R) <= tol / 4 or M >= 80:
                    break
            # one extra order of cushion before certifying
            M += 1
            L += mp.mpf(2 ** M - 2) / M * zpow * mp.zeta(M, K + 1)
            R = K * q ** (M + 1) / ((M + 1) * M * (1 - q))
            v = P * mp.exp(L)
            err = (
                abs(v) * mp.expm1(R) * (1 + mp.mpf(2) ** -10)
                + abs(v) * (3 * K + 4 * M + 16) * mp.mpf(2) ** (2 - mp.prec)
            )
            if err <= tol:
                return complex_result(ctx, v, err, True, "product")
        K *= 4
        if terms is not None:
            raise NoConvergence("requested truncation cannot certify the tolerance")


def zeta_z_mellin(s, ctx: Optional[PrecisionContext] = None) -> EvalResult:
    """Quadrature of (1/Gamma(s)) integral_0^inf e^(-2t) I0(2t) t^(s-1) dt.

    Only valid on the convergence strip 0 < Re(s) < 1/2; outside it raises
    DomainError.  The reported error combines the tanh-sinh level estimate,
    the analytic tail remainder, and the Gamma division.
    """
    ctx = get_context(ctx)
    mp = ctx.mp
    z = ctx.mpc(s)
    if not (0 < z.real < mp.mpf(1) / 2):
        raise DomainError("Mellin route requires 0 < Re(s) < 1/2")
    if z.imag == 0:
        z = z.real
    g = numerics.gamma(z, ctx)
    quad_tol = ctx.tol * max(mp.one, abs(g.value)) / 2
    integral, qerr = heat_mellin_integral(ctx, z, quad_tol)
    v = integral / g.value
    err = qerr / abs(g.value) + abs(v) * (g.err / abs(g.value)) \
        + abs(v) * mp.mpf(2) ** (6 - mp.prec)
    return complex_result(ctx, v, err, False, "quadrature")


_DISPATCH = {
    ZetaZMethod.CLOSED_FORM: zeta_z_closed,
    ZetaZMethod.PRODUCT: zeta_z_product,
    ZetaZMethod.MELLIN_QUADRATURE: zeta_z_mellin,
}


def evaluate_zeta_z(s, ctx: Optional[PrecisionContext] = None,
                    method: ZetaZMethod = ZetaZMethod.CLOSED_FORM) -> ZetaZEval:
    """Evaluate by the requested route and package argument plus result."""
    ctx = get_context(ctx)
    result = _DISPATCH[method](s, ctx)
    return ZetaZEval(HPComplex(ctx.mpc(s), ctx.mp.zero), result, method)


def big_z(s, ctx: Optional[PrecisionContext] = None) -> EvalResult:
    """Z(s) = pi 2^s zeta_Z(s/2); pole errors propagate from zeta_Z."""
    ctx = get_context(ctx)
    mp = ctx.mp
    z = ctx.mpc(s)
    inner = zeta_z_closed(z / 2, ctx)
    pref = mp.pi * mp.power(2, z)
    v = pref * inner.value.value
    err = abs(pref) * inner.err + abs(v) * mp.mpf(2) ** (6 - mp.prec)
    return complex_result(ctx, v, err, inner.certified, "closed-form",
                          note=inner.note)


def _deriv_bracket_exact_negative(n: int) -> Fraction:
    """sum_{k=1}^{n} (1/k - 2/(2k-1)) as an exact rational."""
    acc = Fraction(0)
    for k in range(1, n + 1):
        acc += Fraction(1, k) - Fraction(2, 2 * k - 1)
    return acc


def zeta_z_deriv(s, ctx: Optional[PrecisionContext] = None) -> EvalResult:
    """zeta_Z'(s) for real s < 1/2, plus the exact values at positive integers.

    Uses zeta_Z(s) (-psi0(1/2-s) - 2 log 2 + psi0(1-s)) off the integers;
    at s = -n the bracket telescopes into the exact rational
    C(2n,n) sum_{k<=n} (1/k - 2/(2k-1)), at s = 0 the derivative vanishes
    exactly, and positive integers route to the exact reciprocal formula.
    Positive half-integers (and other s >= 1/2) raise DomainError.
    """
    ctx = get_context(ctx)
    mp = ctx.mp
    x = ctx.mpf(s)
    cls = _classify_lattice(ctx, ctx.mp.mpc(x))
    if cls is not None:
        kind, k = cls
        if kind == "half" and k > 0:
            raise DomainError("derivative undefined at the poles s = n - 1/2 > 0")
        if kind == "int" and k >= 1:
            return exact_result(ctx, zeta_z_deriv_at_positive_integer(k),
                                "exact-at-positive-integer")
        if kind == "int" and k == 0:
            return exact_result(ctx, Fraction(0), "digamma-formula")
        if kind == "int":
            n = -k
            q = comb(2 * n, n) * _deriv_bracket_exact_negative(n)
            return exact_result(ctx, q, "digamma-formula")
    if x >= mp.mpf(1) / 2:
        raise DomainError("derivative formula applies left of s = 1/2")
    zc = zeta_z_closed(x, ctx)
    d1 = numerics.digamma(mp.mpf(1) / 2 - x, ctx)
    d2 = numerics.digamma(1 - x, ctx)
    bracket = -d1.value - 2 * mp.log(2) + d2.value
    v = zc.value.value * bracket
    err = (
        abs(bracket) * zc.err
        + abs(zc.value.value) * (d1.err + d2.err)
        + abs(v) * mp.mpf(2) ** (6 - mp.prec)
    )
    return complex_result(ctx, v, err, False, "digamma-formula")


def zeta_z_deriv_at_positive_integer(n: int) -> Fraction:
    """Exact zeta_Z'(n) = 1 / (n C(2n, n)) for integer n >= 1."""
    if n < 1:
        raise DomainError("positive integer required")
    return Fraction(1, n * comb(2 * n, n))
