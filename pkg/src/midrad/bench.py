"""Benchmark kernels for the CLI: measurement scaffolding, not claims.

Emits CSV rows ``name,param,prec,seconds,metric`` where the metric is the
worst relative accuracy in bits (factorials) or the largest relative radius
(polynomial multiplication).
"""

from __future__ import annotations

import math
import time

from . import ball
from . import ballpoly as bp
from .ball import Ball
from .bigfloat import BigFloat


def ball_factorial(n: int, prec: int) -> Ball:
    """n! as a ball, by recursive halving of the product 1*2*...*n."""
    def fac(a: int, b: int) -> Ball:
        if b - a == 1:
            return Ball.from_int(b)
        m = a + (b - a) // 2
        return ball.mul(fac(a, m), fac(m, b), prec)

    if n < 1:
        return Ball.from_int(1)
    return fac(0, n)


def falling_factorial_poly(n: int, prec: int) -> bp.BallPoly:
    """x (x-1) ... (x-n+1) expanded with a balanced product tree."""
    factors = [(Ball.from_int(-k), Ball.from_int(1)) for k in range(n)]
    return bp.product_tree(factors, prec)


def _acc_to_relrad(acc) -> float:
    if acc == math.inf:
        return 0.0
    if acc == -math.inf:
        return math.inf
    try:
        return math.ldexp(1.0, -int(acc))
    except OverflowError:
        return math.inf


def bench_factorial(ns, precs, out):
    for n in ns:
        for prec in precs:
            t0 = time.perf_counter()
            r = ball_factorial(n, prec)
            dt = time.perf_counter() - t0
            out.write(f"factorial,{n},{prec},{dt:.6f},{ball.rel_accuracy_bits(r)}\n")


def bench_falling_factorial(ns, precs, out):
    for n in ns:
        for prec in precs:
            t0 = time.perf_counter()
            p = falling_factorial_poly(n, prec)
            dt = time.perf_counter() - t0
            worst = math.inf
            for c in p.coeffs:
                if not c.mid.is_zero():
                    worst = min(worst, ball.rel_accuracy_bits(c))
            out.write(f"falling-factorial,{n},{prec},{dt:.6f},{worst}\n")


def _unit_poly(n: int, seed: int) -> bp.BallPoly:
    import random
    rng = random.Random(seed)
    return bp.BallPoly([Ball(BigFloat.from_man_exp(rng.getrandbits(53) | 1, -53))
                        for _ in range(n)])


def bench_polymul(ns, precs, out):
    for n in ns:
        f = _unit_poly(n, seed=n)
        g = _unit_poly(n, seed=n + 1)
        for prec in precs:
            for name, fn in (("polymul-block", bp.mul_block),
                             ("polymul-schoolbook", bp.mul_schoolbook)):
                if name == "polymul-schoolbook" and n > 2000:
                    continue
                t0 = time.perf_counter()
                h = fn(f, g, prec)
                dt = time.perf_counter() - t0
                worst = 0.0
                for c in h.coeffs:
                    if not c.mid.is_zero():
                        worst = max(worst, _acc_to_relrad(ball.rel_accuracy_bits(c)))
                out.write(f"{name},{n},{prec},{dt:.6f},{worst:.3e}\n")
