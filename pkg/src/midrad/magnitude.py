"""Unsigned fixed-precision upper bounds with unbounded exponents.

A regular magnitude is ``man * 2**(exp - 30)`` with ``2**29 <= man < 2**30``,
so ``exp`` is the binade exponent just like :class:`~midrad.bigfloat.BigFloat`.
Every operation rounds upward: results are always >= the exact value and at
most a factor ``1 + 2**-28`` above it (a couple of ulps of the 30-bit
mantissa).  There is no NaN; bounds are nonnegative by construction and
``+inf`` absorbs.
"""

from __future__ import annotations

from . import bigfloat
from .bigfloat import BigFloat

__all__ = [
    "Magnitude",
    "ZERO",
    "INF",
    "ONE",
    "add",
    "mul",
    "addmul",
    "compare",
    "from_bigfloat_upper",
    "to_bigfloat",
    "div_lower_denominator",
    "from_int_upper",
    "mul_int_upper",
    "div_int_upper",
    "mul_2exp",
    "pow2",
    "min_",
    "max_",
]

_MBITS = 30
_MANT_MIN = 1 << 29
_MANT_TOP = 1 << 30

_REGULAR = 0
_ZERO = 1
_POS_INF = 2


class Magnitude:
    """Immutable nonnegative upper bound."""

    __slots__ = ("kind", "man", "exp")

    def __init__(self, kind: int, man: int = 0, exp: int = 0):
        self.kind = kind
        self.man = man
        self.exp = exp

    def is_zero(self) -> bool:
        return self.kind == _ZERO

    def is_inf(self) -> bool:
        return self.kind == _POS_INF

    def is_regular(self) -> bool:
        return self.kind == _REGULAR

    def to_fraction(self):
        from fractions import Fraction
        if self.kind == _ZERO:
            return Fraction(0)
        if self.kind != _REGULAR:
            raise ValueError("no rational value: inf")
        e = self.exp - _MBITS
        if e >= 0:
            return Fraction(self.man << e)
        return Fraction(self.man, 1 << -e)

    def to_text(self) -> str:
        if self.kind == _ZERO:
            return "0"
        if self.kind == _POS_INF:
            return "inf"
        man, e = self.man, self.exp - _MBITS
        tz = (man & -man).bit_length() - 1
        return f"{man >> tz}*2^{e + tz}"

    @classmethod
    def from_text(cls, s: str) -> "Magnitude":
        s = s.strip()
        if s == "0":
            return ZERO
        if s == "inf":
            return INF
        head, sep, tail = s.partition("*2^")
        if not sep:
            raise ValueError(f"bad magnitude literal: {s!r}")
        m = int(head)
        if m < 0:
            raise ValueError("magnitudes are nonnegative")
        return from_man_exp_upper(m, int(tail))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Magnitude):
            return NotImplemented
        return (self.kind == other.kind and self.man == other.man
                and self.exp == other.exp)

    def __hash__(self):
        return hash((self.kind, self.man, self.exp))

    def __repr__(self):
        return f"Magnitude({self.to_text()!r})"


def _mk(man: int, exp: int) -> Magnitude:
    m = Magnitude.__new__(Magnitude)
    m.kind = _REGULAR
    m.man = man
    m.exp = exp
    return m


ZERO = Magnitude(_ZERO)
INF = Magnitude(_POS_INF)


def _norm_up(man: int, lsb: int) -> Magnitude:
    """Upper bound of man*2^lsb, man > 0, with a single upward rounding."""
    bl = man.bit_length()
    if bl <= _MBITS:
        return _mk(man << (_MBITS - bl), lsb + bl)
    sh = bl - _MBITS
    man = -(-man >> sh)  # ceil
    if man == _MANT_TOP:
        return _mk(_MANT_MIN, lsb + bl + 1)
    return _mk(man, lsb + bl)


def from_man_exp_upper(man: int, exp2: int) -> Magnitude:
    """Upper bound of ``man * 2**exp2`` (man >= 0)."""
    if man == 0:
        return ZERO
    return _norm_up(man, exp2)


ONE = from_man_exp_upper(1, 0)
TWO = from_man_exp_upper(1, 1)


def pow2(e: int) -> Magnitude:
    """Exactly 2**e."""
    return _mk(_MANT_MIN, e + 1)


def mul_2exp(x: Magnitude, k: int) -> Magnitude:
    if x.kind != _REGULAR:
        return x
    return _mk(x.man, x.exp + k)


def from_int_upper(n: int) -> Magnitude:
    return from_man_exp_upper(n, 0)


def add(x: Magnitude, y: Magnitude) -> Magnitude:
    if x.kind != _REGULAR:
        return y if x.kind == _ZERO else INF
    if y.kind != _REGULAR:
        return x if y.kind == _ZERO else INF
    if x.exp < y.exp:
        x, y = y, x
    d = x.exp - y.exp
    if d > _MBITS + 2:
        # The smaller term is below one ulp; bump by one ulp instead.
        man = x.man + 1
        if man == _MANT_TOP:
            return _mk(_MANT_MIN, x.exp + 1)
        return _mk(man, x.exp)
    return _norm_up((x.man << d) + y.man, y.exp - _MBITS)


def mul(x: Magnitude, y: Magnitude) -> Magnitude:
    if x.kind != _REGULAR or y.kind != _REGULAR:
        if x.kind == _ZERO or y.kind == _ZERO:
            return ZERO
        return INF
    return _norm_up(x.man * y.man, x.exp + y.exp - 2 * _MBITS)


def addmul(z: Magnitude, x: Magnitude, y: Magnitude) -> Magnitude:
    """Upper bound of z + x*y with a single rounding of the combined sum."""
    if x.kind != _REGULAR or y.kind != _REGULAR:
        if x.kind == _POS_INF or y.kind == _POS_INF:
            if x.kind == _ZERO or y.kind == _ZERO:
                return INF if z.kind == _POS_INF else z  # 0 * inf bounds nothing extra
            return INF
        return z
    if z.kind == _ZERO:
        return mul(x, y)
    if z.kind == _POS_INF:
        return INF
    p = x.man * y.man
    lp = x.exp + y.exp - 2 * _MBITS  # value p * 2**lp
    lz = z.exp - _MBITS
    top_p = lp + p.bit_length()
    if top_p < lz - 2 * _MBITS:
        man = z.man + 1
        if man == _MANT_TOP:
            return _mk(_MANT_MIN, z.exp + 1)
        return _mk(man, z.exp)
    if z.exp < top_p - 3 * _MBITS:
        return _norm_up(p + 1, lp)  # z below one ulp of the product
    l = lp if lp < lz else lz
    return _norm_up((p << (lp - l)) + (z.man << (lz - l)), l)


def compare(x: Magnitude, y: Magnitude) -> int:
    if x.kind == _POS_INF or y.kind == _POS_INF:
        if x.kind == y.kind:
            return 0
        return 1 if x.kind == _POS_INF else -1
    if x.kind == _ZERO or y.kind == _ZERO:
        if x.kind == y.kind:
            return 0
        return -1 if x.kind == _ZERO else 1
    if x.exp != y.exp:
        return 1 if x.exp > y.exp else -1
    if x.man == y.man:
        return 0
    return 1 if x.man > y.man else -1


def min_(x: Magnitude, y: Magnitude) -> Magnitude:
    return x if compare(x, y) <= 0 else y


def max_(x: Magnitude, y: Magnitude) -> Magnitude:
    return x if compare(x, y) >= 0 else y


def from_bigfloat_upper(x: BigFloat) -> Magnitude:
    """Upper bound of |x|; exact when the mantissa fits in 30 bits."""
    if x.is_zero():
        return ZERO
    if x.is_inf():
        return INF
    if x.is_nan():
        raise ValueError("no magnitude bound for nan")
    bl = x.man.bit_length()
    if bl <= _MBITS:
        return _mk(x.man << (_MBITS - bl), x.exp)
    man = -(-x.man >> (bl - _MBITS))
    if man == _MANT_TOP:
        return _mk(_MANT_MIN, x.exp + 1)
    return _mk(man, x.exp)


def to_bigfloat(x: Magnitude) -> BigFloat:
    """Exact conversion."""
    if x.kind == _ZERO:
        return bigfloat.ZERO
    if x.kind == _POS_INF:
        return bigfloat.POS_INF
    return BigFloat.from_man_exp(x.man, x.exp - _MBITS)


def div_lower_denominator(x: Magnitude, lo: BigFloat) -> Magnitude:
    """Upper bound of x / lo given a certified lower bound lo > 0."""
    if lo.is_nan() or lo.signum() <= 0:
        raise ValueError("denominator not bounded away from zero")
    if x.kind == _ZERO:
        return ZERO
    if x.kind == _POS_INF:
        return INF
    if lo.is_inf():
        return ZERO
    bl = lo.man.bit_length()
    if bl <= _MBITS:
        ld = lo.man << (_MBITS - bl)
    else:
        ld = lo.man >> (bl - _MBITS)  # floor: still a lower bound
    q = -((-x.man << (_MBITS + 2)) // ld)
    return _norm_up(q, x.exp - lo.exp - _MBITS - 2)


def mul_int_upper(x: Magnitude, n: int) -> Magnitude:
    """Upper bound of x * n for n >= 0."""
    if n < 0:
        raise ValueError("negative scale")
    if n == 0 or x.kind == _ZERO:
        return ZERO
    if x.kind == _POS_INF:
        return INF
    return _norm_up(x.man * n, x.exp - _MBITS)


def div_int_upper(x: Magnitude, n: int) -> Magnitude:
    """Upper bound of x / n for n > 0."""
    if n <= 0:
        raise ValueError("nonpositive divisor")
    if x.kind != _REGULAR:
        return x
    q = -((-x.man << (_MBITS + 2)) // n)
    return _norm_up(q, x.exp - 2 * _MBITS - 2)
