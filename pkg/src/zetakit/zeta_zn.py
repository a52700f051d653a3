"""The spectral zeta function of discrete circles (cycle graphs on n vertices):

    zeta_n(s) = 4^(-s) sum_{k=1}^{n-1} sin(pi k / n)^(-2s).

Negative integer values are exact alternating binomial sums, odd half-integer
values collapse to short cotangent sums, and positive integer values are
polynomials in n recovered here by exact interpolation with rational
reconstruction.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, lcm
from typing import Optional, Union

from .core import (
    CotPoleError,
    DomainError,
    EvalResult,
    HPReal,
    PrecisionContext,
    ReconstructionError,
    complex_result,
    exact_result,
    get_context,
    mpf_to_fraction,
    real_result,
)

__all__ = [
    "DiscreteCircle",
    "RationalPolynomial",
    "POLY_CAP",
    "zeta_zn_direct",
    "zeta_zn_negative_int",
    "sine_odd_power_sum",
    "sine_power_sum",
    "zeta_zn_closed_poly",
]

#: Largest exponent for which closed polynomials are reconstructed.
POLY_CAP = 8


@dataclass(frozen=True)
class DiscreteCircle:
    """A cycle graph on n >= 2 vertices."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise DomainError("a discrete circle needs at least 2 vertices")


def _vertex_count(n: Union[int, DiscreteCircle]) -> int:
    if isinstance(n, DiscreteCircle):
        return n.n
    return DiscreteCircle(n).n


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial in n with exact rational coefficients (ascending powers)."""

    coeffs: tuple

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise DomainError("empty polynomial")
        if len(self.coeffs) > 1 and self.coeffs[-1] == 0:
            raise DomainError("trailing coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, n) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __str__(self) -> str:
        den = lcm(*(c.denominator for c in self.coeffs))
        nums = [int(c * den) for c in self.coeffs]
        parts = []
        for p in range(len(nums) - 1, -1, -1):
            a = nums[p]
            if a == 0:
                continue
            mag = abs(a)
            if p == 0:
                body = f"{mag}"
            else:
                var = "n" if p == 1 else f"n^{p}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return f"({text})/{den}" if den != 1 else text


def _folded_sine_terms(n: int):
    """(reduced fraction k/n, weight) pairs exploiting sin's k <-> n-k symmetry."""
    for k in range(1, (n + 1) // 2):
        yield Fraction(k, n), 2
    if n % 2 == 0:
        yield Fraction(1, 2), 1


def sine_power_sum(n: Union[int, DiscreteCircle], power,
                   ctx: Optional[PrecisionContext] = None, *,
                   fold: bool = True) -> HPReal:
    """sum_{k=1}^{n-1} sin(pi k/n)^power for real power.

    Sines are taken of exactly reduced rational multiples of pi (never of a
    rounded pi*k/n product), so accuracy survives large n.
    """
    nn = _vertex_count(n)
    ctx = get_context(ctx)
    mp = ctx.mp
    p = ctx.mpf(power)
    acc = mp.zero
    if fold:
        pairs = _folded_sine_terms(nn)
    else:
        pairs = ((min(Fraction(k, nn), Fraction(nn - k, nn)), 1)
                 for k in range(1, nn))
    for frac, weight in pairs:
        sv = mp.sinpi(mp.mpf(frac.numerator) / frac.denominator)
        acc += weight * mp.power(sv, p)
    err = abs(acc) * (nn + 16) * mp.mpf(2) ** (4 - mp.prec)
    return HPReal(acc, err)


def zeta_zn_direct(n: Union[int, DiscreteCircle], s,
                   ctx: Optional[PrecisionContext] = None, *,
                   fold: bool = True) -> EvalResult:
    """The defining finite sum at working precision (any complex s)."""
    nn = _vertex_count(n)
    ctx = get_context(ctx)
    mp = ctx.mp
    z = ctx.mpc(s)
    if z.imag == 0:
        z = z.real
    if z == 0:
        return exact_result(ctx, Fraction(nn - 1), "direct-sum")
    acc = mp.zero
    magnitude = mp.zero  # phases can cancel for complex s; bound on term mass
    if fold:
        pairs = _folded_sine_terms(nn)
    else:
        pairs = ((min(Fraction(k, nn), Fraction(nn - k, nn)), 1)
                 for k in range(1, nn))
    for frac, weight in pairs:
        sv = mp.sinpi(mp.mpf(frac.numerator) / frac.denominator)
        term = weight * mp.power(sv, -2 * z)
        acc += term
        magnitude += abs(term)
    scale = abs(mp.power(4, -z))
    v = mp.power(4, -z) * acc
    err = scale * magnitude * (nn + 16) * mp.mpf(2) ** (4 - mp.prec)
    return complex_result(ctx, v, err, False, "direct-sum")


def zeta_zn_negative_int(n: Union[int, DiscreteCircle], m: int) -> Fraction:
    """Exact zeta_n(-m) = n sum_k (-1)^{kn} C(2m, m+kn) over |k| <= m/n.

    The k = 0 term carries weight one; for m < n it is the only term,
    giving n C(2m, m).
    """
    nn = _vertex_count(n)
    if m < 1:
        raise DomainError("m must be a positive integer")
    acc = 0
    for k in range(-(m // nn), m // nn + 1):
        sign = -1 if (k * nn) % 2 else 1
        acc += sign * comb(2 * m, m + k * nn)
    return Fraction(nn * acc)


def sine_odd_power_sum(n: Union[int, DiscreteCircle], m: int,
                       ctx: Optional[PrecisionContext] = None) -> EvalResult:
    """zeta_n(-1/2 - m) as the cotangent sum
    2 sum_{j=0}^{m} (-1)^{m-j} C(2m+1, j) cot((2m+1-2j) pi / 2n).

    Equals 2^(2m+1) sum_k sin(pi k/n)^(2m+1).  Cotangent arguments are odd
    multiples of pi/2n and so can never land on a pole for n >= 2, but if a
    degenerate argument were ever produced the direct sine-power summation
    is used instead.
    """
    nn = _vertex_count(n)
    if m < 0:
        raise DomainError("m must be a nonnegative integer")
    ctx = get_context(ctx)
    mp = ctx.mp
    try:
        acc = mp.zero
        magnitude = mp.zero
        for j in range(m + 1):
            a = Fraction(2 * m + 1 - 2 * j, 2 * nn)
            a -= a.numerator // a.denominator  # exact reduction mod 1
            if a == 0:
                raise CotPoleError("cotangent argument on a multiple of pi")
            x = mp.mpf(a.numerator) / a.denominator
            cot = mp.cospi(x) / mp.sinpi(x)
            term = comb(2 * m + 1, j) * cot
            acc += -term if (m - j) % 2 else term
            magnitude += abs(term)
        v = 2 * acc
        err = 2 * magnitude * (m + 16) * mp.mpf(2) ** (4 - mp.prec)
        return real_result(ctx, v, err, False, "cot-sum")
    except CotPoleError:
        direct = sine_power_sum(nn, 2 * m + 1, ctx)
        v = mp.mpf(2) ** (2 * m + 1) * direct.value
        return real_result(ctx, v, mp.mpf(2) ** (2 * m + 1) * direct.err,
                           False, "direct-sum", note="cot-pole-fallback")


# --------------------------------------------------------------------------
# closed polynomials at positive integers

_POLY_LOCK = threading.Lock()
_POLY_CACHE: dict = {}


def _interpolate(points) -> list:
    """Exact Newton interpolation through (x_i, y_i), monomial coefficients."""
    xs = [Fraction(x) for x, _ in points]
    coefs = [Fraction(y) for _, y in points]  # divided differences, in place
    for level in range(1, len(points)):
        for i in range(len(points) - 1, level - 1, -1):
            coefs[i] = (coefs[i] - coefs[i - 1]) / (xs[i] - xs[i - level])
    # expand Newton form into monomials
    poly = [Fraction(0)] * len(points)
    for i in range(len(points) - 1, -1, -1):
        # poly <- poly * (x - xs[i]) + coefs[i]
        carry = [Fraction(0)] * len(points)
        for p in range(len(points) - 1):
            carry[p + 1] += poly[p]
            carry[p] -= poly[p] * xs[i]
        carry[0] += coefs[i]
        poly = carry
    return poly


def zeta_zn_closed_poly(m: int, ctx: Optional[PrecisionContext] = None) -> RationalPolynomial:
    """The unique degree-2m polynomial P with P(n) = zeta_n(m) for all n >= 2.

    Evaluates the direct sum at 2m+1 integer points at four times the
    context precision, reconstructs each value as a rational under a
    denominator bound, interpolates exactly, and verifies the polynomial at
    five extra points.  Results are cached per exponent.
    """
    if not 1 <= m <= POLY_CAP:
        raise DomainError(f"closed polynomials supported for 1 <= m <= {POLY_CAP}")
    with _POLY_LOCK:
        cached = _POLY_CACHE.get(m)
    if cached is not None:
        return cached
    ctx = get_context(ctx)
    boost = PrecisionContext(4 * ctx.precision_bits, ctx.target_tol, ctx.max_terms)
    mpb = boost.mp
    # Coefficient denominators outgrow (2m+2)! (already at m = 3 the constant
    # term carries 4^m extra from the 4^-s normalization), hence the bound:
    bound = 4 ** m * factorial(2 * m + 2)
    points = []
    for nn in range(2, 2 * m + 3):
        v = zeta_zn_direct(nn, m, boost).value.re
        q = mpf_to_fraction(v).limit_denominator(bound)
        if abs(v - mpb.mpf(q.numerator) / q.denominator) > mpb.mpf(2) ** (-2 * ctx.precision_bits):
            raise ReconstructionError(f"value at n={nn} is not rational under the bound")
        points.append((nn, q))
    coeffs = _interpolate(points)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    poly = RationalPolynomial(tuple(coeffs))
    check_tol = mpb.mpf(2) ** (-boost.precision_bits // 2)
    for nn in range(2 * m + 3, 2 * m + 8):
        direct = zeta_zn_direct(nn, m, boost).value.re
        expect = poly.evaluate(nn)
        delta = abs(direct - mpb.mpf(expect.numerator) / expect.denominator)
        if delta > check_tol * max(1, abs(direct)):
            raise ReconstructionError(f"verification failed at n={nn}")
    with _POLY_LOCK:
        _POLY_CACHE.setdefault(m, poly)
    return poly


def _seed_poly_cache(m: int, poly: RationalPolynomial) -> None:
    """Test hook: pre-seed (possibly corrupt) a cached polynomial."""
    with _POLY_LOCK:
        _POLY_CACHE[m] = poly


def _clear_poly_cache() -> None:
    with _POLY_LOCK:
        _POLY_CACHE.clear()
