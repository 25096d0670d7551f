import random
from fractions import Fraction

import pytest

from conftest import (ALL_MODES, ball_bounds, contains_fraction, rand_ball,
                      sample_in_ball)
from midrad import ball, bigfloat as bf, elementary as el, magnitude as mag
from midrad.ball import Ball
from midrad.bigfloat import BigFloat, Rounding

TIGHT26 = 1 + Fraction(1, 2 ** 26)


def B(m, r=None):
    mid = BigFloat.from_int(m) if isinstance(m, int) else m
    if r is None:
        return Ball(mid)
    return Ball(mid, r)


class TestAdd:
    def test_exact(self):
        s = ball.add(B(1), B(2), 53)
        assert s.mid.to_fraction() == 3 and s.is_exact()

    def test_radii_add(self):
        q = Ball(BigFloat.from_int(1), mag.pow2(-2))
        s = ball.add(q, q, 53)
        assert s.mid.to_fraction() == 2
        assert Fraction(1, 2) <= s.rad.to_fraction() <= Fraction(1, 2) * TIGHT26

    def test_absorbed_rounding_goes_to_radius(self):
        s = ball.add(B(BigFloat.from_man_exp(1, 100)), B(1), 53)
        assert s.mid.to_fraction() == 2 ** 100
        assert 1 <= s.rad.to_fraction() <= 2 ** 48

    def test_containment_random(self):
        rng = random.Random(101)
        for _ in range(400):
            x, y = rand_ball(rng), rand_ball(rng)
            prec = rng.choice([16, 32, 53])
            s = ball.add(x, y, prec)
            p = sample_in_ball(x, rng) + sample_in_ball(y, rng)
            assert contains_fraction(s, p)


class TestMul:
    def test_example(self):
        x = Ball(BigFloat.from_int(2), mag.pow2(-1))
        y = Ball(BigFloat.from_int(3), mag.pow2(-1))
        p = ball.mul(x, y, 128)
        assert p.mid.to_fraction() == 6
        assert Fraction(11, 4) <= p.rad.to_fraction() <= Fraction(11, 4) * TIGHT26

    def test_exact_zero_annihilates(self):
        p = ball.mul(Ball(BigFloat.from_int(7), mag.ONE), B(0), 53)
        assert p.mid.is_zero() and p.is_exact()

    def test_containment_random(self):
        rng = random.Random(55)
        for _ in range(400):
            x, y = rand_ball(rng), rand_ball(rng)
            p = ball.mul(x, y, rng.choice([16, 32, 53]))
            pt = sample_in_ball(x, rng) * sample_in_ball(y, rng)
            assert contains_fraction(p, pt)


class TestFma:
    def test_exact(self):
        r = ball.fma(B(0), B(2), B(3), 53)
        assert r.mid.to_fraction() == 6 and r.is_exact()

    def test_matches_add_mul_midpoint_when_exact(self):
        z, x, y = B(5), B(7), B(-3)
        a = ball.fma(z, x, y, 53)
        b = ball.add(z, ball.mul(x, y, 53), 53)
        assert a.mid == b.mid

    def test_containment_random(self):
        rng = random.Random(66)
        for _ in range(400):
            z, x, y = rand_ball(rng), rand_ball(rng), rand_ball(rng)
            r = ball.fma(z, x, y, rng.choice([16, 32, 53]))
            pt = sample_in_ball(z, rng) + sample_in_ball(x, rng) * sample_in_ball(y, rng)
            assert contains_fraction(r, pt)


class TestDivSqrt:
    def test_sqrt_exact(self):
        r = ball.sqrt(B(4), 53)
        assert r.mid.to_fraction() == 2 and r.is_exact()

    def test_div_third(self):
        r = ball.div(B(1), B(3), 53)
        assert contains_fraction(r, Fraction(1, 3))
        assert r.rad.to_fraction() <= Fraction(1, 3) / 2 ** 50

    def test_div_zero_in_denominator(self):
        assert ball.div(B(1), Ball(bf.ZERO, mag.ONE), 53).is_indeterminate()
        assert ball.div(B(1), B(0), 53).is_indeterminate()

    def test_sqrt_negative_reach(self):
        assert ball.sqrt(B(-4), 53).is_indeterminate()
        assert ball.sqrt(Ball(BigFloat.from_int(1), mag.TWO), 53).is_indeterminate()
        # touching zero from above is fine
        r = ball.sqrt(Ball(BigFloat.from_int(1), mag.ONE), 53)
        assert not r.is_indeterminate()
        assert contains_fraction(r, Fraction(0)) and contains_fraction(r, Fraction(1414, 1000))

    def test_containment_random(self):
        rng = random.Random(77)
        for _ in range(400):
            x, y = rand_ball(rng), rand_ball(rng)
            d = ball.div(x, y, 53)
            if d.is_indeterminate():
                continue
            py = sample_in_ball(y, rng)
            if py == 0:
                continue
            assert contains_fraction(d, sample_in_ball(x, rng) / py)

    def test_sqrt_containment_random(self):
        rng = random.Random(88)
        for _ in range(300):
            x = rand_ball(rng)
            r = ball.sqrt(x, 53)
            if r.is_indeterminate():
                continue
            pt = sample_in_ball(x, rng)
            if pt < 0:
                continue
            # compare via squaring: pt in sqrt-ball iff some s in ball with s^2 == pt
            lo, hi = ball_bounds(r)
            assert lo * abs(lo) <= pt <= hi * hi


class TestPredicates:
    def test_examples(self):
        assert ball.contains(Ball(bf.ZERO, mag.TWO), Ball(BigFloat.from_int(1), mag.ONE))
        assert not ball.overlaps(Ball(bf.ZERO, mag.ONE), Ball(BigFloat.from_int(3), mag.ONE))
        x = Ball(BigFloat.from_int(5), mag.pow2(-3))
        assert ball.contains_point(x, Fraction(5) + Fraction(1, 8))  # closed boundary
        assert not ball.contains_point(x, Fraction(5) + Fraction(1, 8) + Fraction(1, 2 ** 80))

    def test_exactness_vs_fractions(self):
        rng = random.Random(31)
        for _ in range(800):
            x, y = rand_ball(rng, exp_range=200), rand_ball(rng, exp_range=200)
            xlo, xhi = ball_bounds(x)
            ylo, yhi = ball_bounds(y)
            assert ball.contains(x, y) == (xlo <= ylo and yhi <= xhi)
            assert ball.overlaps(x, y) == (max(xlo, ylo) <= min(xhi, yhi))
            q = sample_in_ball(y, rng)
            assert ball.contains_point(x, q) == (xlo <= q <= xhi)

    def test_wild_exponents_structural(self):
        big = Ball(bf.ZERO, mag.pow2(2 ** 80))
        small = Ball(BigFloat.from_man_exp(1, 2 ** 79), mag.ONE)
        assert ball.contains(big, small)
        assert not ball.contains(small, big)
        assert ball.overlaps(big, small)
        a = Ball(BigFloat.from_man_exp(1, 2 ** 70))
        b = Ball(BigFloat.from_man_exp(1, 2 ** 70), mag.pow2(-(2 ** 70)))
        assert ball.contains(b, a) and ball.contains(a, a)

    def test_specials(self):
        indet = ball.indeterminate()
        line = ball.whole_line()
        assert ball.contains(indet, B(3)) and ball.contains(line, B(3))
        assert not ball.contains(B(3), line)
        assert ball.overlaps(indet, B(3)) and ball.overlaps(line, B(3))
        assert ball.contains_point(line, Fraction(10 ** 100))
        assert ball.contains(Ball(bf.POS_INF), Ball(bf.POS_INF))
        assert not ball.contains(Ball(bf.POS_INF), Ball(bf.NEG_INF))


class TestAccuracy:
    def test_examples(self):
        assert ball.rel_accuracy_bits(Ball(BigFloat.from_int(1), mag.pow2(-54))) == 53
        assert ball.rel_accuracy_bits(B(5)) == ball.ACC_EXACT
        assert ball.rel_accuracy_bits(Ball(bf.ZERO, mag.ONE)) == ball.ACC_NONE
        assert ball.rel_accuracy_bits(ball.indeterminate()) == ball.ACC_NONE
        assert ball.rel_accuracy_bits(Ball(BigFloat.from_int(1), mag.TWO)) == ball.ACC_NONE


class TestCanRound:
    def test_tight_pi(self):
        p = el.const_pi(120)
        assert ball.can_round(p, 53, Rounding.NEAREST_EVEN)

    def test_straddling_tie(self):
        # midpoint exactly between the 53-bit neighbours 1 and 1 + 2^-52
        mid = bf.add(BigFloat.from_int(1), BigFloat.from_man_exp(1, -53), 60,
                     Rounding.NEAREST_EVEN)[0]
        x = Ball(mid, mag.pow2(-80))
        assert not ball.can_round(x, 53, Rounding.NEAREST_EVEN)

    def test_exact_point(self):
        assert ball.can_round(B(2), 7, Rounding.DOWN)

    def test_certifies_common_rounding(self):
        rng = random.Random(13)
        for _ in range(300):
            x = rand_ball(rng)
            for rnd in ALL_MODES:
                if not ball.can_round(x, 12, rnd):
                    continue
                lo, hi = ball_bounds(x)
                from conftest import round_fraction_oracle
                assert round_fraction_oracle(lo, 12, rnd) == round_fraction_oracle(hi, 12, rnd)


class TestPi:
    def test_paper_scale_enclosure(self):
        # consistent with a 30-digit decimal enclosure of pi: both contain pi,
        # so the two intervals must intersect
        p = el.const_pi(100)
        lo, hi = ball_bounds(p)
        dec = Fraction(314159265358979323846264338328, 10 ** 29)
        eps = Fraction(107, 10 ** 32)
        assert lo <= dec + eps and hi >= dec - eps
        assert hi - lo <= Fraction(1, 2 ** 95)

    def test_contains_pi_bracket(self):
        # independent rational bracket: alternating partial sums of Machin's form
        def atan_bracket(inv, terms):
            s = Fraction(0)
            x = Fraction(1, inv)
            lo = hi = None
            for k in range(terms):
                t = x ** (2 * k + 1) / (2 * k + 1)
                s = s + t if k % 2 == 0 else s - t
                if k % 2 == 0:
                    hi = s
                else:
                    lo = s
            return lo, hi

        a5 = atan_bracket(5, 40)
        a239 = atan_bracket(239, 20)
        pi_lo = 16 * a5[0] - 4 * a239[1]
        pi_hi = 16 * a5[1] - 4 * a239[0]
        assert pi_hi - pi_lo < Fraction(1, 2 ** 100)
        for prec in (10, 24, 53, 80):
            p = el.const_pi(prec)
            lo, hi = ball_bounds(p)
            # the rational bracket is far tighter than the ball, so containment
            # of the bracket certifies containment of pi itself
            assert lo <= pi_lo and pi_hi <= hi

    def test_radius_contract(self):
        for prec in (8, 16, 53, 200, 1000):
            p = el.const_pi(prec)
            assert p.rad.to_fraction() <= Fraction(2) ** (4 - prec) * 4

    def test_successive_precisions_overlap(self):
        prev = el.const_pi(16)
        for prec in (17, 31, 64, 129):
            cur = el.const_pi(prec)
            assert ball.overlaps(prev, cur)
            prev = cur

    def test_cache_transparency(self):
        el._pi_cache.clear()
        cold = el.const_pi(70)
        warm = el.const_pi(70)
        assert cold == warm
        el._pi_cache.clear()
        assert el.const_pi(70) == warm


class TestMisc:
    def test_scale_and_int_ops(self):
        x = Ball(BigFloat.from_int(3), mag.ONE)
        y = ball.scale_2exp(x, 5)
        assert y.mid.to_fraction() == 96 and y.rad.to_fraction() == 32
        z = ball.mul_int(x, 7, 53)
        assert z.mid.to_fraction() == 21 and z.rad.to_fraction() >= 7
        w = ball.div_int(B(10), 4, 53)
        assert w.mid.to_fraction() == Fraction(5, 2) and w.is_exact()

    def test_exact_text_round_trip(self):
        rng = random.Random(2)
        for _ in range(200):
            x = rand_ball(rng)
            assert Ball.from_exact_text(x.to_exact_text()) == x
        assert Ball.from_exact_text(ball.indeterminate().to_exact_text()).is_indeterminate()
