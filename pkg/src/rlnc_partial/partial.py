"""Exact probabilities of partially decoding an RLNC generation.

``|X|`` is the number of unit vectors in the row space of the received
coding-vector matrix, i.e. the number of source packets a receiver can
recover without full rank. All results are exact :class:`Fraction` values;
every signed inclusion-exclusion sum is carried out in integers first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidRange, ReceivedExceedsTransmitted
from .qcombin import binomial, gaussian_binomial, q_ladder

NON_SYSTEMATIC = "ns"
SYSTEMATIC = "sys"
MODES = (NON_SYSTEMATIC, SYSTEMATIC)


@dataclass(frozen=True)
class ScenarioNS:
    q: int
    k: int
    n: int
    x: int

    def __post_init__(self):
        if self.q < 2 or self.k < 1 or self.n < 0:
            raise ValueError(f"invalid scenario {self}")
        if not 0 <= self.x <= self.k:
            raise InvalidRange(f"x={self.x} outside 0..{self.k}")


@dataclass(frozen=True)
class ScenarioSys:
    q: int
    k: int
    n_T: int
    n: int
    x: int

    def __post_init__(self):
        if self.q < 2 or self.k < 1 or self.n_T < 0 or self.n < 0:
            raise ValueError(f"invalid scenario {self}")
        if self.n > self.n_T:
            raise ReceivedExceedsTransmitted(f"n={self.n} > n_T={self.n_T}")
        if not 0 <= self.x <= self.k:
            raise InvalidRange(f"x={self.x} outside 0..{self.k}")


@lru_cache(maxsize=None)
def unit_free_count(a: int, b: int, q: int) -> int:
    """Number of ``b``-dim subspaces of GF(q)^a containing no unit vector.

    Inclusion-exclusion over the set of unit vectors forced into the subspace.
    """
    return sum(
        (-1) ** j * binomial(a, j) * gaussian_binomial(a - j, b - j, q) for j in range(a + 1)
    )


@lru_cache(maxsize=None)
def _atleast_count(k: int, r: int, x: int, q: int) -> int:
    # r-dim subspaces of GF(q)^k holding at least x unit vectors
    return sum(binomial(k, i) * unit_free_count(k - i, r - i, q) for i in range(x, r + 1))


def _check_rank_args(q: int, k: int, r: int, x: int) -> None:
    if q < 2 or k < 1:
        raise ValueError("need q >= 2 and k >= 1")
    if not 0 <= x <= r <= k:
        raise InvalidRange(f"need 0 <= x <= r <= k, got x={x}, r={r}, k={k}")


def p_contains_subspace(q: int, k: int, r: int, s: int) -> Fraction:
    """P(a uniform r-dim subspace of GF(q)^k contains a fixed s-dim subspace)."""
    if not (0 <= s <= k and 0 <= r <= k):
        raise InvalidRange(f"need 0 <= s, r <= k, got s={s}, r={r}, k={k}")
    return Fraction(gaussian_binomial(k - s, r - s, q), gaussian_binomial(k, r, q))


def p_exact_units_given_rank(q: int, k: int, r: int, x: int) -> Fraction:
    """P(|X| = x | rank r); the same for any number of rows n >= r."""
    _check_rank_args(q, k, r, x)
    return Fraction(
        binomial(k, x) * unit_free_count(k - x, r - x, q), gaussian_binomial(k, r, q)
    )


def p_atleast_units_given_rank(q: int, k: int, r: int, x: int) -> Fraction:
    _check_rank_args(q, k, r, x)
    return Fraction(_atleast_count(k, r, x, q), gaussian_binomial(k, r, q))


@lru_cache(maxsize=None)
def p_ns_atleast(q: int, k: int, n: int, x: int) -> Fraction:
    """P(|X| >= x) after receiving ``n`` random combinations of ``k`` packets."""
    ScenarioNS(q, k, n, x)
    if x == 0:
        return Fraction(1)
    top = min(n, k)
    if x > top:
        return Fraction(0)
    num = sum(_atleast_count(k, r, x, q) * q_ladder(r, n, q) for r in range(x, top + 1))
    return Fraction(num, q ** (n * k))


@lru_cache(maxsize=None)
def p_sys_atleast(q: int, k: int, n_T: int, n: int, x: int) -> Fraction:
    """P(|X| >= x) for systematic RLNC: ``n`` of ``n_T`` packets received,
    the first ``k`` transmitted packets being the source packets themselves."""
    ScenarioSys(q, k, n_T, n, x)
    if n_T <= k:
        return Fraction(1 if x <= n else 0)
    if x == 0:
        return Fraction(1)
    top = min(n, k)
    if x > top:
        return Fraction(0)
    h_min = max(0, n - n_T + k)
    num = 0
    for h in range(h_min, top + 1):
        weight = binomial(k, h) * binomial(n_T - k, n - h)
        if weight:
            num += weight * _sys_given_sources(q, k, n, x, h)
    return Fraction(num, binomial(n_T, n) * q ** (n * k))


@lru_cache(maxsize=None)
def _sys_given_sources(q: int, k: int, n: int, x: int, h: int) -> int:
    """Rank sum for ``h`` received source packets, over the denominator q^{nk}.

    The (n-h) x (k-h) coded block contributes q^{-(n-h)(k-h)}; it is lifted
    to the common denominator by q^{h(n+k-h)}. Independent of n_T, so one
    entry serves every transmission length.
    """
    x_rest = max(0, x - h)
    total = sum(
        q_ladder(r - h, n - h, q) * _atleast_count(k - h, r - h, x_rest, q)
        for r in range(max(x, h), min(n, k) + 1)
    )
    return total * q ** (h * (n + k - h))


@dataclass
class DecodeProfile:
    """The curve x -> P(|X| >= x) for x = 0..k."""

    mode: str
    q: int
    k: int
    n: int | None
    n_T: int | None = None
    values: dict[int, Fraction | float] = field(default_factory=dict)
    provenance: str = "analytic"
    # exhaustive profiles also carry joint[r, |X|] matrix counts
    joint: object = None

    def exact_values(self) -> dict[int, Fraction | float]:
        """P(|X| = x), by differencing the at-least curve."""
        return {
            x: self.values[x] - (self.values[x + 1] if x < self.k else 0)
            for x in range(self.k + 1)
        }

    def is_valid(self) -> bool:
        vals = [self.values[x] for x in range(self.k + 1)]
        return vals[0] == 1 and all(a >= b for a, b in zip(vals, vals[1:]))


def decode_profile(mode: str, q: int, k: int, n: int, n_T: int | None = None) -> DecodeProfile:
    if mode == NON_SYSTEMATIC:
        values = {x: p_ns_atleast(q, k, n, x) for x in range(k + 1)}
    elif mode == SYSTEMATIC:
        if n_T is None:
            raise ValueError("systematic mode needs n_T")
        values = {x: p_sys_atleast(q, k, n_T, n, x) for x in range(k + 1)}
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return DecodeProfile(mode, q, k, n, n_T, values, "analytic")
