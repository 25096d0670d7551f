"""Dense polynomials with ball coefficients.

``mul_schoolbook`` accumulates every pairwise product with one exact sum
per output coefficient, which is essentially the best bound a coefficient
can get.  ``mul_block`` keeps that bound quality at high degree: it splits
midpoints from radii, rescales x -> 2^c x so coefficient magnitudes vary
slowly, cuts the scaled midpoints into blocks of bounded exponent spread,
multiplies block pairs exactly over the integers, and adds each block-pair
product to the output with a single rounding.  Radius products (all
coefficients nonnegative) run through a scaled hardware-double schoolbook
convolution with a certified upward inflation, falling back to pure
magnitude arithmetic for very wide blocks.

The scale c is a heuristic: slopes of the coefficient exponents are sampled
over the whole index range and over the trailing half (series tails with
super-geometric decay are flattened much better by their asymptotic slope),
and the steeper sample wins.  Any c is sound; it only affects block count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ball
from . import bigfloat as bf
from . import intpoly
from . import magnitude as mag
from .ball import Ball
from .bigfloat import BigFloat, Rounding

__all__ = [
    "BallPoly",
    "MidRadSplit",
    "BlockPlan",
    "IntPoly",
    "mul",
    "mul_schoolbook",
    "mul_block",
    "mullow",
    "mul_complex",
    "plan_blocks",
    "evaluate",
    "derivative",
    "product_tree",
    "add",
    "sub",
]

_NE = Rounding.NEAREST_EVEN
_SCHOOLBOOK_DEGREE = 16   # strictly below this degree, mul_block delegates
_DOUBLE_WIDTH_LIMIT = 1000
_RUN_SPAN = 400


class BallPoly:
    """Dense polynomial; coefficient k multiplies x^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)

    @classmethod
    def from_ints(cls, values) -> "BallPoly":
        return cls([Ball.from_int(v) for v in values])

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k) -> Ball:
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_text(self) -> str:
        return "\n".join(f"{k}: {c.to_exact_text()}" for k, c in enumerate(self.coeffs))

    @classmethod
    def from_text(cls, s: str) -> "BallPoly":
        entries = {}
        for line in s.splitlines():
            line = line.strip()
            if not line:
                continue
            k, _, rest = line.partition(":")
            entries[int(k)] = Ball.from_exact_text(rest.strip())
        n = max(entries) + 1 if entries else 0
        return cls([entries.get(k, Ball(bf.ZERO)) for k in range(n)])

    def __repr__(self):
        return f"BallPoly(len={len(self.coeffs)})"


@dataclass
class MidRadSplit:
    """Midpoint/radius decomposition of a factor pair: (A +- a)(B +- b)."""
    A: list
    a: list
    B: list
    b: list

    @classmethod
    def of(cls, f: BallPoly, g: BallPoly) -> "MidRadSplit":
        return cls([c.mid for c in f], [c.rad for c in f],
                   [c.mid for c in g], [c.rad for c in g])


@dataclass
class BlockPlan:
    """Scaling and per-input block boundaries for the exact midpoint stage."""
    scale: int
    blocks_f: list
    blocks_g: list
    height_cap: int


@dataclass
class IntPoly:
    """Exact integer image of a floating-point block: 2^exp * coeffs."""
    coeffs: list
    exp: int


def add(f: BallPoly, g: BallPoly, prec: int) -> BallPoly:
    n = max(len(f), len(g))
    out = []
    zero = Ball(bf.ZERO)
    for k in range(n):
        a = f.coeffs[k] if k < len(f) else zero
        b = g.coeffs[k] if k < len(g) else zero
        out.append(ball.add(a, b, prec))
    return BallPoly(out)


def sub(f: BallPoly, g: BallPoly, prec: int) -> BallPoly:
    n = max(len(f), len(g))
    out = []
    zero = Ball(bf.ZERO)
    for k in range(n):
        a = f.coeffs[k] if k < len(f) else zero
        b = g.coeffs[k] if k < len(g) else zero
        out.append(ball.sub(a, b, prec))
    return BallPoly(out)


# -- schoolbook ------------------------------------------------------------------

def mul_schoolbook(f: BallPoly, g: BallPoly, prec: int) -> BallPoly:
    if not len(f) or not len(g):
        return BallPoly([])
    fm = [c.mid for c in f]
    gm = [c.mid for c in g]
    fr = [c.rad for c in f]
    gr = [c.rad for c in g]
    fu = [mag.from_bigfloat_upper(m) if not m.is_nan() else mag.INF for m in fm]
    gu = [mag.from_bigfloat_upper(m) if not m.is_nan() else mag.INF for m in gm]
    n = len(f) + len(g) - 1
    out = []
    for k in range(n):
        lo = max(0, k - len(g) + 1)
        hi = min(k, len(f) - 1)
        prods = []
        rad = mag.ZERO
        for i in range(lo, hi + 1):
            j = k - i
            prods.append(bf.mul_exact(fm[i], gm[j]))
            ri, rj = fr[i], gr[j]
            rjz = rj.is_zero()
            riz = ri.is_zero()
            if not (riz and rjz):
                if not rjz:
                    rad = mag.addmul(rad, fu[i], rj)
                if not riz:
                    rad = mag.addmul(rad, gu[j], ri)
                if not (riz or rjz):
                    rad = mag.addmul(rad, ri, rj)
        mid, inexact = bf.vector_sum(prods, prec, _NE)
        if mid.is_nan():
            out.append(ball.indeterminate())
            continue
        if inexact:
            rad = mag.add(rad, mag.pow2(mid.exp - prec))
        out.append(Ball(mid, rad))
    return BallPoly(out)


# -- block plan --------------------------------------------------------------------

def _round_ties_to_zero(x: Fraction) -> int:
    fl = math.floor(x)
    fr = x - fl
    half = Fraction(1, 2)
    if fr > half:
        return fl + 1
    if fr < half:
        return fl
    return fl if x > 0 else fl + 1


def _slope_samples(p: BallPoly):
    idx = [i for i, c in enumerate(p.coeffs) if c.mid.is_regular()]
    if len(idx) < 2:
        return None, None
    a, b = idx[0], idx[-1]
    glob = (p.coeffs[b].mid.exp - p.coeffs[a].mid.exp, b - a)
    m = (a + b + 1) // 2
    mi = next((i for i in idx if m <= i < b), None)
    tail = None
    if mi is not None and b - mi >= 2:
        tail = (p.coeffs[b].mid.exp - p.coeffs[mi].mid.exp, b - mi)
    return glob, tail


def _scale_heuristic(f: BallPoly, g: BallPoly) -> int:
    globs, tails = [], []
    for p in (f, g):
        glob, tail = _slope_samples(p)
        if glob:
            globs.append(glob)
        if tail:
            tails.append(tail)
    if not globs:
        return 0
    s = Fraction(sum(de for de, _ in globs), sum(di for _, di in globs))
    if tails:
        st = Fraction(sum(de for de, _ in tails), sum(di for _, di in tails))
        if abs(st) > abs(s):
            s = st
    return -_round_ties_to_zero(s)


def _partition(p: BallPoly, c: int, cap: int) -> list:
    idx = [i for i, cf in enumerate(p.coeffs) if cf.mid.is_regular()]
    if not idx:
        return []
    blocks = []
    start = last = idx[0]
    e = p.coeffs[start].mid.exp + c * start
    emin = emax = e
    for i in idx[1:]:
        e = p.coeffs[i].mid.exp + c * i
        lo = e if e < emin else emin
        hi = e if e > emax else emax
        if hi - lo <= cap:
            emin, emax, last = lo, hi, i
        else:
            blocks.append((start, last + 1))
            start = last = i
            emin = emax = e
    blocks.append((start, last + 1))
    return blocks


def plan_blocks(f: BallPoly, g: BallPoly, prec: int) -> BlockPlan:
    """Choose the scaling c and greedy block boundaries (height <= 3*prec+512)."""
    cap = 3 * prec + 512
    c = _scale_heuristic(f, g)
    return BlockPlan(c, _partition(f, c, cap), _partition(g, c, cap), cap)


# -- radius convolution ---------------------------------------------------------------

def _conv_mag(a: list, b: list) -> list:
    out = [mag.ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = mag.addmul(out[i + j], x, y)
    return out


def _runs(a: list) -> list:
    """Maximal index runs whose nonzero entries span <= _RUN_SPAN exponent bits."""
    runs = []
    start = 0
    emin = emax = None
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        e = x.exp
        if emin is None:
            if i > start:
                start = start  # leading zeros stay in the run; harmless
            emin = emax = e
            continue
        lo = min(emin, e)
        hi = max(emax, e)
        if hi - lo <= _RUN_SPAN:
            emin, emax = lo, hi
        else:
            runs.append((start, i, emax))
            start = i
            emin = emax = e
    runs.append((start, len(a), emax))
    return [(s, e, top) for s, e, top in runs if top is not None]


def _conv_double(a: list, b: list) -> list:
    """Nonnegative convolution with float64, inflated to a certified bound."""
    out = [mag.ZERO] * (len(a) + len(b) - 1)
    nterms = min(len(a), len(b))
    infl = mag.from_man_exp_upper((1 << 52) + nterms + 16, -52)  # 1 + (n+16)*2^-52
    for sa, ea, topa in _runs(a):
        va = np.zeros(ea - sa)
        for i in range(sa, ea):
            x = a[i]
            if not x.is_zero():
                va[i - sa] = math.ldexp(x.man, x.exp - 30 - topa)  # exact in double
        for sb, eb, topb in _runs(b):
            vb = np.zeros(eb - sb)
            for j in range(sb, eb):
                y = b[j]
                if not y.is_zero():
                    vb[j - sb] = math.ldexp(y.man, y.exp - 30 - topb)
            conv = np.convolve(va, vb)
            shift = topa + topb
            base = sa + sb
            for t, v in enumerate(conv.tolist()):
                if v:
                    m53, e53 = math.frexp(v)
                    up = mag.from_man_exp_upper(int(m53 * 9007199254740992), e53 - 53 + shift)
                    out[base + t] = mag.add(out[base + t], mag.mul(up, infl))
    return out


def _conv_radius(a: list, b: list) -> list:
    if not a or not b:
        return []
    if all(x.is_zero() for x in a) or all(y.is_zero() for y in b):
        return [mag.ZERO] * (len(a) + len(b) - 1)
    if min(len(a), len(b)) >= _DOUBLE_WIDTH_LIMIT or any(x.is_inf() for x in a + b):
        return _conv_mag(a, b)
    return _conv_double(a, b)


# -- block multiplication ----------------------------------------------------------------

def _block_ints(mids: list, c: int, start: int, end: int) -> IntPoly:
    base = None
    for i in range(start, end):
        m = mids[i]
        if m.is_regular():
            l = m.lsb + c * i
            if base is None or l < base:
                base = l
    coeffs = []
    for i in range(start, end):
        m = mids[i]
        if m.is_regular():
            coeffs.append((m.sign * m.man) << (m.lsb + c * i - base))
        else:
            coeffs.append(0)
    return IntPoly(coeffs, base)


def mul_block(f: BallPoly, g: BallPoly, prec: int) -> BallPoly:
    if not len(f) or not len(g):
        return BallPoly([])
    if min(len(f), len(g)) - 1 < _SCHOOLBOOK_DEGREE:
        return mul_schoolbook(f, g, prec)
    if any(not (c.mid.is_regular() or c.mid.is_zero()) for c in f.coeffs) or \
       any(not (c.mid.is_regular() or c.mid.is_zero()) for c in g.coeffs):
        return mul_schoolbook(f, g, prec)
    split = MidRadSplit.of(f, g)
    plan = plan_blocks(f, g, prec)
    c = plan.scale
    n = len(f) + len(g) - 1
    contributions = [[] for _ in range(n)]
    fints = [(s, _block_ints(split.A, c, s, e)) for s, e in plan.blocks_f]
    gints = [(s, _block_ints(split.B, c, s, e)) for s, e in plan.blocks_g]
    for sa, pa in fints:
        for sb, pb in gints:
            prod = intpoly.mul(pa.coeffs, pb.coeffs)
            e = pa.exp + pb.exp
            base = sa + sb
            for t, v in enumerate(prod):
                if v:
                    contributions[base + t].append(BigFloat.from_man_exp(v, e))
    # radius polynomial |A| b + a (|B| + b)
    absA = [mag.from_bigfloat_upper(m) for m in split.A]
    absBb = [mag.add(mag.from_bigfloat_upper(m), r) for m, r in zip(split.B, split.b)]
    rad1 = _conv_radius(absA, split.b)
    rad2 = _conv_radius(split.a, absBb)
    out = []
    for k in range(n):
        mid, inexact = bf.vector_sum(contributions[k], prec, _NE)
        if mid.is_regular() and c:
            mid = BigFloat.from_man_exp(mid.sign * mid.man, mid.lsb - c * k)
        rad = mag.add(rad1[k], rad2[k])
        if inexact:
            rad = mag.add(rad, mag.pow2(mid.exp - prec))
        out.append(Ball(mid, rad))
    return BallPoly(out)


def mul(f: BallPoly, g: BallPoly, prec: int) -> BallPoly:
    return mul_block(f, g, prec)


def mullow(f: BallPoly, g: BallPoly, n: int, prec: int) -> BallPoly:
    """First n coefficients of f*g (truncated power-series product)."""
    if n < 0:
        raise ValueError("negative truncation length")
    if n == 0 or not len(f) or not len(g):
        return BallPoly([])
    full = mul(f, g, prec)
    return BallPoly(full.coeffs[:n])


def mul_complex(fr: BallPoly, fi: BallPoly, gr: BallPoly, gi: BallPoly,
                prec: int) -> tuple[BallPoly, BallPoly]:
    """Complex polynomial product via four real block multiplications."""
    hr = sub(mul(fr, gr, prec), mul(fi, gi, prec), prec)
    hi = add(mul(fr, gi, prec), mul(fi, gr, prec), prec)
    return hr, hi


# -- evaluation, derivative, product trees -------------------------------------------------

def evaluate(f: BallPoly, x: Ball, prec: int) -> Ball:
    """Horner evaluation with ball operations."""
    acc = Ball(bf.ZERO)
    for c in reversed(f.coeffs):
        acc = ball.fma(c, acc, x, prec)
    return acc


def derivative(f: BallPoly) -> BallPoly:
    out = []
    for k in range(1, len(f)):
        c = f.coeffs[k]
        mid = bf.mul_exact(c.mid, BigFloat.from_int(k))
        out.append(Ball(mid, mag.mul_int_upper(c.rad, k)))
    return BallPoly(out)


def product_tree(factors, prec: int) -> BallPoly:
    """Expand prod_i (a_i + b_i x) by balanced pairwise multiplication."""
    leaves = [BallPoly([a, b]) for a, b in factors]
    if not leaves:
        raise ValueError("need at least one factor")

    def _tree(lo: int, hi: int) -> BallPoly:
        if hi - lo == 1:
            return leaves[lo]
        mid = (lo + hi) // 2
        return mul(_tree(lo, mid), _tree(mid, hi), prec)

    return _tree(0, len(leaves))
