"""Tanh-sinh quadrature specialized to the heat-trace Mellin integral

    integral_0^inf  e^(-2t) I0(2t) t^(s-1) dt,   0 < Re(s) < 1/2.

The integrand splits into an s-independent heat factor (expensive: Bessel)
and a cheap power of t, so nodes, weights, and heat values are cached per
(precision, level) and shared across evaluation points and threads.

Layout: tanh-sinh on (0, 1] absorbs the t^(s-1) endpoint singularity; the
range [1, T] runs through u = log t; beyond T = 64 the integrand follows its
descending series in 1/t whose terms integrate in closed form, leaving a
remainder far below any supported tolerance.
"""

from __future__ import annotations

import threading
from typing import Tuple

from .core import NoConvergence, PrecisionContext
from .numerics import _i0e_raw

#: Switch point between quadrature and the analytic descending-series tail.
T_SPLIT = 64

_MAX_LEVEL = 13

_CACHE_LOCK = threading.Lock()
# (working_bits, level) -> (ymax, nodes);  nodes are tuples described below.
_UNIT_CACHE: dict = {}
_EXP_CACHE: dict = {}
# working_bits -> (w0, h(1/2), log(1/2)) / (w0, h(sqrt(T)), log of midpoint u)
_UNIT_CENTER: dict = {}
_EXP_CENTER: dict = {}


def _level_js(level: int):
    """Node indices introduced at this level (odd multiples of the step)."""
    j = 1 if level else 0
    step = 2 if level else 1
    while True:
        yield j
        j += step


def _raw_abscissa(mp, u):
    """tanh-sinh geometry at u: (y, w, frac_minus, frac_plus, log_frac_minus).

    y = (pi/2) sinh u; the node pair on (0,1) is 1/(1+e^(2y)) and its
    reflection, computed in cancellation-free form; w is the pure weight
    (pi/2) cosh u / cosh(y)^2 halved for the unit-interval map.
    """
    pi2 = mp.pi / 2
    y = pi2 * mp.sinh(u)
    e2y = mp.exp(2 * y)
    frac_m = 1 / (1 + e2y)
    frac_p = e2y / (1 + e2y)
    log_m = -mp.log1p(e2y)
    w = pi2 * mp.cosh(u) * 4 / (e2y + 2 + 1 / e2y) / 2
    return y, w, frac_m, frac_p, log_m


def _extend_unit(mp, wb: int, level: int, ymax) -> tuple:
    """Unit-interval nodes (y, w, h(tm), log tm, h(tp), log tp) up to ymax."""
    key = (wb, level)
    with _CACHE_LOCK:
        cached = _UNIT_CACHE.get(key)
        if cached is not None and cached[0] >= ymax:
            return cached[1]
    # (re)build outside any potential reader's view, then publish atomically
    h = mp.mpf(2) ** (-level)
    switch = max(30, wb // 2)
    nodes = []
    for j in _level_js(level):
        u = j * h
        y, w, tm, tp, log_m = _raw_abscissa(mp, u)
        if j == 0:
            continue  # center node handled separately
        hm, _ = _i0e_raw(mp, tm, switch)
        hp, _ = _i0e_raw(mp, tp, switch)
        log_p = 2 * y + log_m
        nodes.append((y, w, hm, log_m, hp, log_p))
        if y > ymax:
            break
    result = tuple(nodes)
    with _CACHE_LOCK:
        cached = _UNIT_CACHE.get(key)
        if cached is None or cached[0] < ymax:
            _UNIT_CACHE[key] = (ymax, result)
            return result
        return cached[1]


def _unit_center(mp, wb: int):
    with _CACHE_LOCK:
        cached = _UNIT_CENTER.get(wb)
    if cached is None:
        half = mp.mpf(1) / 2
        hval, _ = _i0e_raw(mp, half, max(30, wb // 2))
        cached = (mp.pi / 4, hval, mp.log(half))
        with _CACHE_LOCK:
            _UNIT_CENTER[wb] = cached
    return cached


def _extend_exp(mp, wb: int, level: int, ymax) -> tuple:
    """Nodes for int_0^lnT g(u) du, g(u) = heat(e^u) e^(us), as tuples
    (y, w, h(e^{u-}), u-, h(e^{u+}), u+)."""
    key = (wb, level)
    with _CACHE_LOCK:
        cached = _EXP_CACHE.get(key)
        if cached is not None and cached[0] >= ymax:
            return cached[1]
    h = mp.mpf(2) ** (-level)
    lnT = mp.log(T_SPLIT)
    halfw = lnT / 2
    switch = max(30, wb // 2)
    nodes = []
    for j in _level_js(level):
        u = j * h
        y, w, frac_m, frac_p, _ = _raw_abscissa(mp, u)
        if j == 0:
            continue
        um = lnT * frac_m
        up = lnT * frac_p
        hm, _ = _i0e_raw(mp, mp.exp(um), switch)
        hp, _ = _i0e_raw(mp, mp.exp(up), switch)
        nodes.append((y, w * 2 * halfw, hm, um, hp, up))
        if y > ymax:
            break
    result = tuple(nodes)
    with _CACHE_LOCK:
        cached = _EXP_CACHE.get(key)
        if cached is None or cached[0] < ymax:
            _EXP_CACHE[key] = (ymax, result)
            return result
        return cached[1]


def _exp_center(mp, wb: int):
    with _CACHE_LOCK:
        cached = _EXP_CENTER.get(wb)
    if cached is None:
        lnT = mp.log(T_SPLIT)
        u0 = lnT / 2
        hval, _ = _i0e_raw(mp, mp.exp(u0), max(30, wb // 2))
        cached = (mp.pi / 2 * lnT / 2, hval, u0)
        with _CACHE_LOCK:
            _EXP_CENTER[wb] = cached
    return cached


def _ts_sum(mp, tol, max_level: int, level_term, center_term):
    """Generic nested tanh-sinh level loop with a heuristic error estimate."""
    total = None
    prev = None
    for level in range(0, max_level + 1):
        h = mp.mpf(2) ** (-level)
        part = level_term(level)
        if level == 0:
            total = h * (part + center_term())
        else:
            total = total / 2 + h * part
        if prev is not None and level >= 4:
            diff = abs(total - prev)
            err = diff + abs(total) * mp.mpf(2) ** (12 - mp.prec)
            if diff <= tol:
                return total, err
        prev = total
    raise NoConvergence("tanh-sinh quadrature did not reach the tolerance")


def _quantize_up(mp, y):
    """Round the decay cutoff up to a power of two so cache entries shared
    between nearby exponents do not trigger rebuilds."""
    q = mp.mpf(64)
    while q < y:
        q *= 2
    return q


def _integral_unit(ctx: PrecisionContext, s, tol):
    """integral_0^1 heat(t) t^(s-1) dt by tanh-sinh."""
    mp = ctx.mp
    wb = ctx.working_bits
    sig = s.real
    # weight*integrand decays like e^(-2 y Re s) toward t=0, e^(-2y) toward 1
    ymax = (wb + 16) * mp.log(2) / (2 * min(sig, mp.one))
    ycache = _quantize_up(mp, ymax)
    s1 = s - 1

    def level_term(level):
        acc = mp.zero
        for (y, w, hm, log_m, hp, log_p) in _extend_unit(mp, wb, level, ycache):
            acc += w * (hm * mp.exp(log_m * s1) + hp * mp.exp(log_p * s1))
            if y > ymax:
                break
        return acc

    def center_term():
        w0, hval, logt = _unit_center(mp, wb)
        return w0 * hval * mp.exp(logt * s1)

    return _ts_sum(mp, tol, _MAX_LEVEL, level_term, center_term)


def _integral_exp(ctx: PrecisionContext, s, tol):
    """integral_1^T heat(t) t^(s-1) dt via t = e^u."""
    mp = ctx.mp
    wb = ctx.working_bits
    ymax = (wb + 16) * mp.log(2) / 2
    ycache = _quantize_up(mp, ymax)

    def level_term(level):
        acc = mp.zero
        for (y, w, hm, um, hp, up) in _extend_exp(mp, wb, level, ycache):
            acc += w * (hm * mp.exp(um * s) + hp * mp.exp(up * s))
            if y > ymax:
                break
        return acc

    def center_term():
        w0, hval, u0 = _exp_center(mp, wb)
        return w0 * hval * mp.exp(u0 * s)

    return _ts_sum(mp, tol, _MAX_LEVEL, level_term, center_term)


def _tail(ctx: PrecisionContext, s, tol):
    """integral_T^inf via the descending series of the heat factor:
    heat(t) ~ (4 pi t)^(-1/2) sum_k b_k t^(-k), each term integrating to
    b_k T^(s-k-1/2) / (k+1/2-s).  Remainder taken as twice the first
    omitted term (the series is asymptotic; at T = 64 terms descend by
    ~2 orders each, so optimal truncation sits far below any tolerance)."""
    mp = ctx.mp
    T = mp.mpf(T_SPLIT)
    acc = mp.mpc(0)
    bk = mp.one
    k = 0
    half = mp.mpf(1) / 2
    while True:
        term = bk * mp.power(T, s - k - half) / (k + half - s)
        acc += term
        if abs(term) < tol / 8:
            bk *= mp.mpf((2 * k + 1) ** 2) / (16 * (k + 1))
            omitted = bk * mp.power(T, s.real - k - 1 - half) / abs(k + 1 + half - s)
            break
        if k > 200:
            raise NoConvergence("Mellin tail series stalled")
        k += 1
        bk *= mp.mpf((2 * k - 1) ** 2) / (16 * k)
    front = 1 / mp.sqrt(4 * mp.pi)
    return front * acc, front * 2 * abs(omitted)


def heat_mellin_integral(ctx: PrecisionContext, s, tol) -> Tuple:
    """(value, error estimate) of the full Mellin integral at complex s."""
    mp = ctx.mp
    tol = mp.convert(tol)
    i1, e1 = _integral_unit(ctx, s, tol / 4)
    i2, e2 = _integral_exp(ctx, s, tol / 4)
    i3, e3 = _tail(ctx, s, tol / 4)
    return i1 + i2 + i3, e1 + e2 + e3
