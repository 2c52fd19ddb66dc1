"""Rank distribution of a uniformly random n x k matrix over GF(q)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qcombin import gaussian_binomial, q_ladder


@dataclass(frozen=True)
class RankPmf:
    q: int
    n: int
    k: int
    probs: dict[int, Fraction]

    def __getitem__(self, r: int) -> Fraction:
        return self.probs.get(r, Fraction(0))


def rank_count(q: int, k: int, n: int, r: int) -> int:
    """Number of n x k matrices over GF(q) of rank ``r``."""
    return gaussian_binomial(n, r, q) * q_ladder(r, k, q)


def rank_pmf(q: int, k: int, n: int) -> RankPmf:
    if q < 2:
        raise ValueError("q must be >= 2")
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    total = q ** (n * k)
    probs = {r: Fraction(rank_count(q, k, n, r), total) for r in range(min(n, k) + 1)}
    return RankPmf(q, n, k, probs)
