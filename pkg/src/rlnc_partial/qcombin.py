"""Exact integer combinatorics: binomials, Gaussian binomials, q-ladders.

Probabilities are carried as :class:`fractions.Fraction` and only rendered
to decimal at the output boundary (:func:`to_decimal_str`).
"""
from __future__ import annotations

import math
from decimal import ROUND_HALF_EVEN, Context
from fractions import Fraction
from functools import lru_cache

ProbExact = Fraction


def binomial(m: int, d: int) -> int:
    if m < 0:
        raise ValueError("binomial upper index must be >= 0")
    if d < 0 or d > m:
        return 0
    return math.comb(m, d)


@lru_cache(maxsize=None)
def gaussian_binomial(m: int, d: int, q: int) -> int:
    """Number of ``d``-dimensional subspaces of GF(q)^m (0 out of range)."""
    if m < 0:
        raise ValueError("Gaussian binomial upper index must be >= 0")
    if d < 0 or d > m:
        return 0
    d = min(d, m - d)
    num = den = 1
    for i in range(d):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    out, rem = divmod(num, den)
    assert rem == 0
    return out


@lru_cache(maxsize=None)
def q_ladder(r: int, n: int, q: int) -> int:
    """prod_{l=0}^{r-1} (q^n - q^l); zero when r > n."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r > n:
        return 0
    qn = q**n
    out = 1
    for ell in range(r):
        out *= qn - q**ell
    return out


def to_decimal_str(value: Fraction, precision: int = 12) -> str:
    """``value`` correctly rounded (half-even) to ``precision`` significant digits."""
    ctx = Context(prec=precision, rounding=ROUND_HALF_EVEN)
    return str(ctx.divide(value.numerator, value.denominator))


def exact_str(value: Fraction) -> str:
    """``"3/8"``; integers render without a denominator."""
    return str(Fraction(value))
