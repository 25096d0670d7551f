"""Shared oracles and generators for the test suite.

The oracles here deliberately avoid the library's own arithmetic: exact
rational math uses fractions.Fraction, high-precision references use
mpmath.  That keeps every containment and rounding check independent of
the code paths being tested.
"""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath

from midrad import ball, bigfloat as bf, magnitude as mag
from midrad.ball import Ball
from midrad.bigfloat import BigFloat, Rounding

mpmath.mp.prec = 300

HALF = Fraction(1, 2)


def mpf_fraction(x) -> Fraction:
    """Exact rational value of an mpmath float."""
    t = mpmath.mpf(x)
    sign, man, exp, _ = t._mpf_
    man = -man if sign else man
    return Fraction(man) * Fraction(2) ** exp


def ball_bounds(b: Ball) -> tuple[Fraction, Fraction]:
    m = b.mid.to_fraction()
    r = b.rad.to_fraction()
    return m - r, m + r


def contains_fraction(b: Ball, q: Fraction) -> bool:
    lo, hi = ball_bounds(b)
    return lo <= q <= hi


def rand_bigfloat(rng: random.Random, max_bits: int = 64, exp_range: int = 60) -> BigFloat:
    man = rng.getrandbits(rng.randrange(1, max_bits + 1)) | 1
    if rng.random() < 0.5:
        man = -man
    return BigFloat.from_man_exp(man, rng.randrange(-exp_range, exp_range + 1))


def rand_magnitude(rng: random.Random, exp_range: int = 60):
    if rng.random() < 0.05:
        return mag.ZERO
    man = rng.getrandbits(30) | (1 << 29)
    return mag.from_man_exp_upper(man, rng.randrange(-exp_range, exp_range + 1) - 30)


def rand_ball(rng: random.Random, max_bits: int = 64, exp_range: int = 40,
              rad_chance: float = 0.8) -> Ball:
    mid = rand_bigfloat(rng, max_bits, exp_range)
    if rng.random() < rad_chance:
        r = mag.from_man_exp_upper(rng.getrandbits(16) + 1,
                                   mid.exp - rng.randrange(8, 70))
    else:
        r = mag.ZERO
    return Ball(mid, r)


def sample_in_ball(b: Ball, rng: random.Random) -> Fraction:
    m = b.mid.to_fraction()
    r = b.rad.to_fraction()
    return m + r * Fraction(rng.randrange(-1024, 1025), 1024)


def round_fraction_oracle(x: Fraction, prec: int, rnd: Rounding) -> Fraction:
    """Correct rounding of a rational to prec bits, by exact enumeration of
    the two neighbouring representable values."""
    if x == 0:
        return Fraction(0)
    s = 1 if x > 0 else -1
    a = -x if x < 0 else x
    e = a.numerator.bit_length() - a.denominator.bit_length()
    while Fraction(2) ** (e - 1) > a:
        e -= 1
    while Fraction(2) ** e <= a:
        e += 1
    scale = Fraction(2) ** (e - prec)
    t = a / scale  # in [2^(prec-1), 2^prec)
    fl = t.numerator // t.denominator
    frac = t - fl
    if frac == 0:
        cand = fl
    elif rnd == Rounding.TOWARD_ZERO:
        cand = fl
    elif rnd == Rounding.AWAY_FROM_ZERO:
        cand = fl + 1
    elif rnd == Rounding.DOWN:
        cand = fl if s > 0 else fl + 1
    elif rnd == Rounding.UP:
        cand = fl + 1 if s > 0 else fl
    else:
        if frac > HALF:
            cand = fl + 1
        elif frac < HALF:
            cand = fl
        else:
            cand = fl if fl % 2 == 0 else fl + 1
    r = s * cand * scale
    # verify the defining property against both neighbours
    below, above = s * fl * scale, s * (fl + 1) * scale
    if s < 0:
        below, above = above, below
    assert below <= x <= above
    if frac != 0:
        if rnd == Rounding.DOWN:
            assert r <= x
        elif rnd == Rounding.UP:
            assert r >= x
        elif rnd == Rounding.TOWARD_ZERO:
            assert abs(r) <= abs(x)
        elif rnd == Rounding.AWAY_FROM_ZERO:
            assert abs(r) >= abs(x)
        else:
            assert abs(r - x) <= scale / 2
    return r


ALL_MODES = (Rounding.DOWN, Rounding.UP, Rounding.TOWARD_ZERO,
             Rounding.AWAY_FROM_ZERO, Rounding.NEAREST_EVEN)
