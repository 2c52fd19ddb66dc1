"""Partial decoding over a memoryless packet-erasure channel."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .partial import MODES, NON_SYSTEMATIC, p_ns_atleast, p_sys_atleast
from .qcombin import binomial


def parse_eps(eps) -> Fraction:
    """Exact rational erasure probability; ``"0.2"`` and ``0.2`` both give 1/5."""
    if isinstance(eps, Fraction):
        value = eps
    elif isinstance(eps, float):
        value = Fraction(repr(eps))
    else:
        value = Fraction(str(eps).strip())
    if not 0 <= value <= 1:
        raise ValueError(f"erasure probability {value} outside [0, 1]")
    return value


@dataclass(frozen=True)
class ErasureScenario:
    q: int
    k: int
    n_T: int
    eps: Fraction
    x: int
    mode: str = NON_SYSTEMATIC

    def __post_init__(self):
        object.__setattr__(self, "eps", parse_eps(self.eps))
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.q < 2 or self.k < 1 or self.n_T < 0 or not 0 <= self.x <= self.k:
            raise ValueError(f"invalid scenario {self}")


def conditional(mode: str, q: int, k: int, n_T: int, n: int, x: int) -> Fraction:
    if mode == NON_SYSTEMATIC:
        return p_ns_atleast(q, k, n, x)
    return p_sys_atleast(q, k, n_T, n, x)


def p_erasure_atleast(q: int, k: int, n_T: int, eps, x: int, mode: str = NON_SYSTEMATIC) -> Fraction:
    """P(|X| >= x) when each of ``n_T`` packets is erased independently w.p. ``eps``."""
    s = ErasureScenario(q, k, n_T, eps, x, mode)
    keep = 1 - s.eps
    total = Fraction(0)
    for n in range(x, n_T + 1):
        w = binomial(n_T, n) * keep**n * s.eps ** (n_T - n)
        if w:
            total += w * conditional(mode, q, k, n_T, n, x)
    return total


def erasure_curve(q: int, k: int, eps, mode: str, xs, n_T_values) -> list[tuple[int, int, Fraction]]:
    """Rows ``(n_T, x, P)``, n_T major and x minor."""
    return [
        (n_T, x, p_erasure_atleast(q, k, n_T, eps, x, mode))
        for n_T in n_T_values
        for x in xs
    ]
