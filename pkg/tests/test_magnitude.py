import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rand_magnitude
from midrad import bigfloat as bf
from midrad import magnitude as mag
from midrad.bigfloat import BigFloat

TIGHT = 1 + Fraction(1, 2 ** 28)


def F(x):
    return x.to_fraction()


class TestBasicOps:
    def test_add_identity(self):
        x = mag.from_int_upper(7)
        assert mag.add(mag.ZERO, x) == x
        assert mag.add(x, mag.ZERO) == x

    def test_mul_small(self):
        v = F(mag.mul(mag.from_int_upper(3), mag.from_int_upper(5)))
        assert 15 <= v <= 15 * TIGHT

    def test_addmul_tiny_product(self):
        v = F(mag.addmul(mag.ONE, mag.pow2(-200), mag.pow2(-200)))
        assert 1 + Fraction(1, 2 ** 400) <= v <= (1 + Fraction(1, 2 ** 400)) * TIGHT

    def test_inf_absorbs(self):
        assert mag.add(mag.INF, mag.ONE).is_inf()
        assert mag.mul(mag.INF, mag.ONE).is_inf()
        assert mag.mul(mag.INF, mag.ZERO).is_zero()  # a zero bound wins
        assert mag.addmul(mag.ONE, mag.INF, mag.ZERO) == mag.ONE

    def test_soundness_and_tightness_random(self):
        rng = random.Random(42)
        for _ in range(3000):
            x, y, z = (rand_magnitude(rng) for _ in range(3))
            fx, fy, fz = F(x), F(y), F(z)
            s = mag.add(x, y)
            assert fx + fy <= F(s) <= (fx + fy) * TIGHT or (fx + fy) == 0
            p = mag.mul(x, y)
            assert fx * fy <= F(p) <= fx * fy * TIGHT or fx * fy == 0
            am = mag.addmul(z, x, y)
            exact = fz + fx * fy
            assert exact <= F(am) <= exact * TIGHT or exact == 0


class TestConversions:
    def test_exact_small_bigfloat(self):
        m = mag.from_bigfloat_upper(BigFloat.from_man_exp(3, -2))
        assert F(m) == Fraction(3, 4)

    def test_long_mantissa_upper(self):
        x = BigFloat.from_man_exp((1 << 100) + 1, -50)
        m = mag.from_bigfloat_upper(x)
        assert x.to_fraction() <= F(m) <= x.to_fraction() * TIGHT

    def test_infinities(self):
        assert mag.from_bigfloat_upper(bf.POS_INF).is_inf()
        assert mag.from_bigfloat_upper(bf.NEG_INF).is_inf()
        with pytest.raises(ValueError):
            mag.from_bigfloat_upper(bf.NAN)

    def test_to_bigfloat_exact(self):
        rng = random.Random(9)
        for _ in range(500):
            m = rand_magnitude(rng)
            if m.is_zero():
                assert mag.to_bigfloat(m).is_zero()
            else:
                assert mag.to_bigfloat(m).to_fraction() == F(m)


class TestDivLower:
    def test_simple(self):
        v = F(mag.div_lower_denominator(mag.ONE, BigFloat.from_int(2)))
        assert Fraction(1, 2) <= v <= Fraction(1, 2) * TIGHT

    def test_zero_numerator(self):
        assert mag.div_lower_denominator(mag.ZERO, BigFloat.from_int(5)).is_zero()

    def test_zero_denominator_rejected(self):
        with pytest.raises(ValueError):
            mag.div_lower_denominator(mag.ONE, bf.ZERO)
        with pytest.raises(ValueError):
            mag.div_lower_denominator(mag.ONE, BigFloat.from_int(-1))

    def test_soundness_random(self):
        rng = random.Random(4)
        for _ in range(2000):
            x = rand_magnitude(rng)
            lo = BigFloat.from_man_exp(rng.randrange(1, 1 << 70), rng.randrange(-40, 40))
            got = mag.div_lower_denominator(x, lo)
            assert F(got) >= F(x) / lo.to_fraction()


class TestCompare:
    def test_examples(self):
        assert mag.compare(mag.ZERO, mag.ONE) == -1
        assert mag.compare(mag.INF, mag.ONE) == 1
        assert mag.compare(mag.from_man_exp_upper(3, -30), mag.from_man_exp_upper(3, -30)) == 0

    def test_total_order_random(self):
        rng = random.Random(77)
        for _ in range(1000):
            x, y = rand_magnitude(rng), rand_magnitude(rng)
            c = mag.compare(x, y)
            fx, fy = F(x), F(y)
            assert c == (0 if fx == fy else (1 if fx > fy else -1))


class TestHelpers:
    def test_pow2(self):
        assert F(mag.pow2(-7)) == Fraction(1, 128)
        assert F(mag.pow2(31)) == 2 ** 31

    def test_mul_div_int(self):
        x = mag.from_int_upper(10)
        assert 30 <= F(mag.mul_int_upper(x, 3)) <= 30 * TIGHT
        assert Fraction(10, 3) <= F(mag.div_int_upper(x, 3)) <= Fraction(10, 3) * TIGHT
        assert mag.mul_int_upper(x, 0).is_zero()

    def test_min_max(self):
        a, b = mag.from_int_upper(2), mag.from_int_upper(5)
        assert mag.min_(a, b) == a and mag.max_(a, b) == b

    def test_text_round_trip(self):
        rng = random.Random(3)
        for _ in range(200):
            m = rand_magnitude(rng)
            assert mag.Magnitude.from_text(m.to_text()) == m
        assert mag.Magnitude.from_text("0").is_zero()
        assert mag.Magnitude.from_text("inf").is_inf()


@given(st.integers(min_value=0, max_value=2 ** 90),
       st.integers(min_value=-90, max_value=90))
@settings(max_examples=300, deadline=None)
def test_from_man_exp_upper_sound(man, e):
    m = mag.from_man_exp_upper(man, e)
    exact = Fraction(man) * Fraction(2) ** e
    if man == 0:
        assert m.is_zero()
    else:
        assert exact <= F(m) <= exact * TIGHT
