"""Elementary functions on real balls.

Each function evaluates the midpoint by argument reduction plus a Taylor
series with a certified truncation bound, then adds a first-order bound for
the input radius.  Internal evaluation parameters are capped so that the
work stays polynomial in the precision regardless of the input: beyond the
cutoffs, sin/cos return [0 +/- 1] and exp collapses to a tiny one-sided
enclosure (negative side) or the whole line (positive side).

The constants pi and log(2) are evaluated by binary splitting of fast
series (Machin's formula, atanh(1/3)) and cached per power-of-two working
precision, so results are identical whether or not the cache is warm.
"""

from __future__ import annotations

import math
import threading

from . import ball
from . import bigfloat as bf
from . import magnitude as mag
from .ball import Ball
from .bigfloat import BigFloat, Rounding

__all__ = [
    "const_pi",
    "const_log2",
    "exp",
    "sin_cos",
    "sin",
    "cos",
    "log",
    "atan",
    "power",
    "sinh_cosh",
]

_NE = Rounding.NEAREST_EVEN


# -- cached constants ---------------------------------------------------------

def _binsplit(a: int, b: int, M: int, alternating: bool) -> tuple[int, int]:
    """(P, Q) with P/Q = sum_{k=a}^{b-1} (+-1)^k / ((2k+1) * M^(k-a))."""
    if b - a == 1:
        p = -1 if (alternating and (a & 1)) else 1
        return p, 2 * a + 1
    m = (a + b) // 2
    p1, q1 = _binsplit(a, m, M, alternating)
    p2, q2 = _binsplit(m, b, M, alternating)
    mp = M ** (m - a)
    return p1 * q2 * mp + p2 * q1, q1 * q2 * mp


def _atan_inv_int(m: int, wp: int) -> Ball:
    """Enclosure of atan(1/m) for an integer m >= 2."""
    n = (wp + 10) // int(2 * math.log2(m)) + 2
    p, q = _binsplit(0, n, m * m, True)
    mid, inexact = bf.div(BigFloat.from_int(p), BigFloat.from_int(q * m), wp, _NE)
    rad = mag.pow2(mid.exp - wp) if inexact else mag.ZERO
    # alternating series: tail <= 1/((2n+1) m^(2n+1))
    tail = mag.div_lower_denominator(
        mag.ONE, BigFloat.from_int((2 * n + 1) * m ** (2 * n + 1)))
    return Ball(mid, mag.add(rad, tail))


def _compute_pi(wp: int) -> Ball:
    # pi = 16 atan(1/5) - 4 atan(1/239)
    a = ball.scale_2exp(_atan_inv_int(5, wp + 8), 4)
    b = ball.scale_2exp(_atan_inv_int(239, wp + 8), 2)
    return ball.sub(a, b, wp + 8)


def _compute_log2(wp: int) -> Ball:
    # log 2 = 2 atanh(1/3) = (2/3) sum_{k>=0} 1/((2k+1) 9^k)
    n = (wp + 10) // 6 + 2
    p, q = _binsplit(0, n, 9, False)
    mid, inexact = bf.div(BigFloat.from_int(2 * p), BigFloat.from_int(3 * q), wp + 8, _NE)
    rad = mag.pow2(mid.exp - wp - 8) if inexact else mag.ZERO
    # tail <= (2/3)(9/8) / ((2n+1) 9^n) <= 1/((2n+1) 9^n)
    tail = mag.div_lower_denominator(mag.ONE, BigFloat.from_int((2 * n + 1) * 9 ** n))
    return Ball(mid, mag.add(rad, tail))


_pi_cache: dict[int, Ball] = {}
_log2_cache: dict[int, Ball] = {}
_cache_lock = threading.Lock()


def _bucket(wp: int) -> int:
    b = 64
    while b < wp:
        b <<= 1
    return b


def _pi_ball(wp: int) -> Ball:
    """pi at (at least) wp bits; deterministic in the bucketed precision."""
    key = _bucket(wp + 16)
    with _cache_lock:
        cached = _pi_cache.get(key)
    if cached is None:
        cached = _compute_pi(key)
        with _cache_lock:
            _pi_cache.setdefault(key, cached)
    return cached


def _log2_ball(wp: int) -> Ball:
    key = _bucket(wp + 16)
    with _cache_lock:
        cached = _log2_cache.get(key)
    if cached is None:
        cached = _compute_log2(key)
        with _cache_lock:
            _log2_cache.setdefault(key, cached)
    return cached


def const_pi(prec: int) -> Ball:
    """Enclosure of pi with radius well below 2**(4-prec)."""
    if prec < 2:
        raise ValueError("precision must be >= 2")
    return ball.round_to(_pi_ball(prec), prec)


def const_log2(prec: int) -> Ball:
    if prec < 2:
        raise ValueError("precision must be >= 2")
    return ball.round_to(_log2_ball(prec), prec)


# -- exponent clamping ---------------------------------------------------------

def _exceeds(e: int, bound_bits: int) -> bool:
    """abs(e) > 2**bound_bits, without materializing the bound."""
    a = abs(e)
    bl = a.bit_length()
    if bl <= bound_bits:
        return False
    if bl >= bound_bits + 2:
        return True
    return a != (1 << bound_bits)


def _clamp(b: Ball, prec: int) -> Ball:
    """Flush transcendental results with outlandish exponents into the bounds."""
    m = b.mid
    if not m.is_regular():
        return b
    bound = max(65536, 4 * prec)
    if not _exceeds(m.exp, bound):
        return b
    if m.exp > 0:
        return ball.whole_line()
    return Ball(bf.ZERO, mag.add(b.rad, mag.pow2(m.exp + 1)))


# -- exp ------------------------------------------------------------------------

def _exp_series(t: Ball, wp: int) -> Ball:
    """Enclosure of e^t for |t| <= 1.1, with a certified tail bound."""
    s = Ball(bf.ONE)
    term = Ball(bf.ONE)
    tol = -(wp + 4)
    k = 0
    tm = mag.ONE
    while True:
        k += 1
        term = ball.div_int(ball.mul(term, t, wp), k, wp)
        s = ball.add(s, term, wp)
        tm = ball.upper_mag(term)
        if tm.is_zero() or tm.exp <= tol:
            break
    # remaining tail <= |term| * q/(1-q) with q = |t|/(k+1) <= 0.55
    return Ball(s.mid, mag.add(s.rad, mag.mul_2exp(tm, 1)))


def _expm1_upper(r: mag.Magnitude) -> mag.Magnitude:
    """Upper bound of e^r - 1."""
    if r.is_zero():
        return mag.ZERO
    if r.is_inf():
        return mag.INF
    if r.exp <= 0:  # r <= 1: e^r - 1 <= r (1 + r)
        return mag.mul(r, mag.add(mag.ONE, r))
    if r.exp > 62:
        return mag.INF
    return mag.pow2(1 << (r.exp + 1))  # e^r <= 2^(2r) <= 2^(2^(exp+1))


def _exp_point(m: BigFloat, prec: int) -> Ball:
    """Tight enclosure of e^m for a regular midpoint m."""
    n = m.exp
    wp = prec + (n if n > 0 else 0) + 16
    k = 0
    if n >= 0:
        ln2 = _log2_ball(wp)
        q, _ = bf.div(m, ln2.mid, max(32, n + 4), _NE)
        k = bf.to_int_nearest(q)
    if k:
        t = ball.sub(Ball(m), ball.mul_int(_log2_ball(wp), k, wp), wp)
    else:
        t = Ball(m)
    s = _exp_series(t, wp)
    if k:
        s = ball.scale_2exp(s, k)
    return ball.round_to(s, prec)


def exp(x: Ball, prec: int) -> Ball:
    m = x.mid
    if m.is_nan():
        return ball.indeterminate()
    if m.is_inf():
        return Ball(bf.POS_INF) if m.signum() > 0 else Ball(bf.ZERO)
    cutoff = max(128, 2 * prec)
    if m.is_regular() and m.exp > cutoff:
        hi = ball.upper_bound(x, 32)
        if hi.is_regular() and hi.signum() < 0 and hi.exp > cutoff:
            t = 1 << cutoff
            return Ball(BigFloat.from_man_exp(1, -t - 1), mag.pow2(-t - 1))
        return ball.whole_line()
    if m.is_zero():
        point = Ball(bf.ONE)
    else:
        point = _exp_point(m, prec)
    if x.rad.is_zero():
        return point
    prop = mag.mul(ball.upper_mag(point), _expm1_upper(x.rad))
    return _clamp(Ball(point.mid, mag.add(point.rad, prop)), prec)


# -- sin / cos ------------------------------------------------------------------

def _sin_series(t: Ball, wp: int) -> Ball:
    t2 = ball.mul(t, t, wp)
    term = t
    s = t
    tol = -(wp + 4)
    j = 0
    while True:
        j += 1
        term = ball.div_int(ball.neg(ball.mul(term, t2, wp)), (2 * j) * (2 * j + 1), wp)
        s = ball.add(s, term, wp)
        tm = ball.upper_mag(term)
        if tm.is_zero() or tm.exp <= tol:
            break
    return Ball(s.mid, mag.add(s.rad, tm))  # alternating: tail <= last term


def _cos_series(t: Ball, wp: int) -> Ball:
    t2 = ball.mul(t, t, wp)
    term = Ball(bf.ONE)
    s = Ball(bf.ONE)
    tol = -(wp + 4)
    j = 0
    while True:
        j += 1
        term = ball.div_int(ball.neg(ball.mul(term, t2, wp)), (2 * j - 1) * (2 * j), wp)
        s = ball.add(s, term, wp)
        tm = ball.upper_mag(term)
        if tm.is_zero() or tm.exp <= tol:
            break
    return Ball(s.mid, mag.add(s.rad, tm))


def _sin_cos_point(m: BigFloat, prec: int) -> tuple[Ball, Ball]:
    n = m.exp
    wp = prec + (n if n > 0 else 0) + 16
    k = 0
    if n >= 1:
        pih = ball.scale_2exp(_pi_ball(wp), -1)
        q, _ = bf.div(m, pih.mid, max(32, n + 4), _NE)
        k = bf.to_int_nearest(q)
    if k:
        pih = ball.scale_2exp(_pi_ball(wp), -1)
        t = ball.sub(Ball(m), ball.mul_int(pih, k, wp), wp)
    else:
        t = Ball(m)
    sj = _sin_series(t, wp)
    cj = _cos_series(t, wp)
    r = k & 3
    if r == 0:
        s, c = sj, cj
    elif r == 1:
        s, c = cj, ball.neg(sj)
    elif r == 2:
        s, c = ball.neg(sj), ball.neg(cj)
    else:
        s, c = ball.neg(cj), sj
    return ball.round_to(s, prec), ball.round_to(c, prec)


_UNIT = Ball(bf.ZERO, mag.ONE)


def _tighten_unit(b: Ball) -> Ball:
    """sin/cos of a real always lies in [-1, 1]."""
    if mag.compare(ball.upper_mag(b), mag.ONE) > 0:
        return _UNIT
    return b


def sin_cos(x: Ball, prec: int) -> tuple[Ball, Ball]:
    m = x.mid
    if m.is_nan() or m.is_inf():
        return ball.indeterminate(), ball.indeterminate()
    if m.is_regular() and m.exp > max(65536, 4 * prec):
        return _UNIT, _UNIT
    if m.is_zero():
        s, c = Ball(bf.ZERO), Ball(bf.ONE)
    else:
        s, c = _sin_cos_point(m, prec)
    if x.rad.is_zero():
        return s, c
    prop = mag.min_(x.rad, mag.TWO)  # Lipschitz 1, range width 2
    s = _tighten_unit(Ball(s.mid, mag.add(s.rad, prop)))
    c = _tighten_unit(Ball(c.mid, mag.add(c.rad, prop)))
    return s, c


def sin(x: Ball, prec: int) -> Ball:
    return sin_cos(x, prec)[0]


def cos(x: Ball, prec: int) -> Ball:
    return sin_cos(x, prec)[1]


# -- log --------------------------------------------------------------------------

def _atanh_series(u: Ball, wp: int) -> Ball:
    """sum u^(2k+1)/(2k+1) for |u| <= 1/5; one-sided tail bound."""
    u2 = ball.mul(u, u, wp)
    term = u
    s = u
    tol = -(wp + 4)
    k = 0
    while True:
        k += 1
        term = ball.mul(term, u2, wp)
        t = ball.div_int(term, 2 * k + 1, wp)
        s = ball.add(s, t, wp)
        tm = ball.upper_mag(t)
        if tm.is_zero() or tm.exp <= tol:
            break
    return Ball(s.mid, mag.add(s.rad, tm))  # ratio <= 1/24: tail < last term


def _log_point(m: BigFloat, prec: int) -> Ball:
    if m == bf.ONE:
        return Ball(bf.ZERO)
    e = m.exp
    wp = prec + abs(e).bit_length() + 16
    bl = m.man.bit_length()
    # a = m * 2^-e in [1/2, 1); renormalize to [3/4, 3/2) for |u| <= 1/5
    if m.man << 2 < 3 << bl:  # a < 3/4: halve the exponent part instead
        e -= 1
    a = Ball(BigFloat.from_man_exp(m.man, m.exp - bl - e))
    one = Ball(bf.ONE)
    u = ball.div(ball.sub(a, one, wp), ball.add(a, one, wp), wp)
    s = _atanh_series(u, wp)
    res = ball.scale_2exp(s, 1)
    if e:
        res = ball.add(res, ball.mul_int(_log2_ball(wp), e, wp), wp)
    return ball.round_to(res, prec)


def log(x: Ball, prec: int) -> Ball:
    m = x.mid
    if m.is_nan():
        return ball.indeterminate()
    if m.is_inf():
        return Ball(bf.POS_INF) if m.signum() > 0 else ball.indeterminate()
    if m.signum() <= 0:
        return ball.indeterminate()
    if not x.rad.is_zero():
        if x.rad.is_inf():
            return ball.indeterminate()
        if ball._sign_sum([m, -mag.to_bigfloat(x.rad)]) <= 0:
            return ball.indeterminate()  # ball touches (-inf, 0]
    point = _log_point(m, prec)
    if x.rad.is_zero():
        return point
    lo, _ = bf.add(m, -mag.to_bigfloat(x.rad), 32, Rounding.DOWN)
    prop = mag.div_lower_denominator(x.rad, lo)  # sup 1/t over the ball
    return Ball(point.mid, mag.add(point.rad, prop))


# -- atan -------------------------------------------------------------------------

def _atan_series(z: Ball, wp: int) -> Ball:
    """atan series for |z| <= 1/8 (alternating)."""
    z2 = ball.mul(z, z, wp)
    term = z
    s = z
    tol = -(wp + 4)
    k = 0
    while True:
        k += 1
        term = ball.neg(ball.mul(term, z2, wp))
        t = ball.div_int(term, 2 * k + 1, wp)
        s = ball.add(s, t, wp)
        tm = ball.upper_mag(t)
        if tm.is_zero() or tm.exp <= tol:
            break
    return Ball(s.mid, mag.add(s.rad, tm))


_EIGHTH = mag.pow2(-3)


def _atan_point(m: BigFloat, prec: int) -> Ball:
    wp = prec + 24
    sign = m.sign
    a = abs(m)
    if a == bf.ONE:
        res = ball.scale_2exp(_pi_ball(wp), -2)
    else:
        flip = bf.compare(a, bf.ONE) > 0
        z = ball.div(Ball(bf.ONE), Ball(a), wp) if flip else Ball(a)
        one = Ball(bf.ONE)
        h = 0
        while h < 8 and mag.compare(ball.upper_mag(z), _EIGHTH) > 0:
            w = ball.sqrt(ball.add(one, ball.mul(z, z, wp), wp), wp)
            z = ball.div(z, ball.add(one, w, wp), wp)
            h += 1
        res = ball.scale_2exp(_atan_series(z, wp), h)
        if flip:
            res = ball.sub(ball.scale_2exp(_pi_ball(wp), -1), res, wp)
    if sign < 0:
        res = ball.neg(res)
    return ball.round_to(res, prec)


def atan(x: Ball, prec: int) -> Ball:
    m = x.mid
    if m.is_nan():
        return ball.indeterminate()
    if m.is_inf():
        point = ball.scale_2exp(_pi_ball(prec + 8), -1)
        if m.signum() < 0:
            point = ball.neg(point)
        point = ball.round_to(point, prec)
    elif m.is_zero():
        point = Ball(bf.ZERO)
    elif m.exp > prec + 8:
        # |atan(m) - sign * pi/2| = atan(1/|m|) <= 2^(1 - exp)
        ph = ball.round_to(ball.scale_2exp(_pi_ball(prec + 8), -1), prec)
        if m.sign < 0:
            ph = ball.neg(ph)
        point = Ball(ph.mid, mag.add(ph.rad, mag.pow2(1 - m.exp)))
    else:
        point = _atan_point(m, prec)
    if x.rad.is_zero():
        return point
    prop = mag.min_(x.rad, mag.from_int_upper(4))  # Lipschitz 1, range width pi
    return Ball(point.mid, mag.add(point.rad, prop))


# -- pow --------------------------------------------------------------------------

_POW_INT_LIMIT = 1 << 20


def _pow_int(x: Ball, e: int, prec: int) -> Ball:
    """Binary powering on balls; e != 0."""
    n = abs(e)
    wp = prec + 2 * n.bit_length() + 4
    bits = bin(n)[3:]
    acc = x
    for b in bits:
        acc = ball.mul(acc, acc, wp)
        if b == "1":
            acc = ball.mul(acc, x, wp)
    if e < 0:
        return ball.div(Ball(bf.ONE), acc, prec)
    return ball.round_to(acc, prec)


def power(x: Ball, y: Ball, prec: int) -> Ball:
    """x**y: binary powering for small exact integer y, else exp(y log x)."""
    my = y.mid
    if my.is_nan() or x.mid.is_nan():
        return ball.indeterminate()
    if y.rad.is_zero() and my.is_integer() and not my.is_inf():
        if my.is_zero():
            return Ball(bf.ONE)
        e = bf.to_int_nearest(my)
        if abs(e) <= _POW_INT_LIMIT:
            if x.mid.is_zero() and x.rad.is_zero():
                return Ball(bf.ZERO) if e > 0 else ball.indeterminate()
            return _pow_int(x, e, prec)
    if x.mid.is_zero() and x.rad.is_zero():
        # 0^y = 0 for y bounded away from zero on the positive side
        if ball.lower_bound(y, 32).signum() > 0:
            return Ball(bf.ZERO)
        return ball.indeterminate()
    lg = log(x, 32)
    if lg.is_indeterminate():
        return ball.indeterminate()
    est = ball.mul(y, lg, 32).mid
    n_est = est.exp if est.is_regular() else 0
    wp = prec + (n_est if n_est > 0 else 0) + 12
    return exp(ball.mul(y, log(x, wp), wp), prec)


# -- hyperbolic (support for the complex layer) -------------------------------------

def sinh_cosh(x: Ball, prec: int) -> tuple[Ball, Ball]:
    wp = prec + 8
    e1 = exp(x, wp)
    e2 = exp(ball.neg(x), wp)
    sh = ball.scale_2exp(ball.sub(e1, e2, wp), -1)
    ch = ball.scale_2exp(ball.add(e1, e2, wp), -1)
    return ball.round_to(sh, prec), ball.round_to(ch, prec)
