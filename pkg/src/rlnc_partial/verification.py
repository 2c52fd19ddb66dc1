"""Exact comparison of the analytic formulas with the exhaustive oracles."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .partial import (
    decode_profile,
    p_atleast_units_given_rank,
    p_exact_units_given_rank,
)
from .rankstats import rank_pmf
from .simulator import exhaustive_oracle_ns, exhaustive_oracle_sys


@dataclass
class Mismatch:
    case: str
    quantity: str
    oracle: Fraction
    analytic: Fraction

    def __str__(self) -> str:
        return f"{self.case}: {self.quantity} oracle={self.oracle} analytic={self.analytic}"


def check_ns(q: int, k: int, n: int) -> list[Mismatch]:
    """Profile, rank pmf and rank-conditioned probabilities vs enumeration."""
    case = f"ns q={q} k={k} n={n}"
    oracle = exhaustive_oracle_ns(q, k, n)
    joint = oracle.joint
    total = q ** (n * k)
    bad = []
    analytic = decode_profile("ns", q, k, n)
    for x in range(k + 1):
        if oracle.values[x] != analytic.values[x]:
            bad.append(Mismatch(case, f"P(|X|>={x})", oracle.values[x], analytic.values[x]))
    pmf = rank_pmf(q, k, n)
    for r in range(min(n, k) + 1):
        per_rank = int(joint[r].sum())
        if Fraction(per_rank, total) != pmf[r]:
            bad.append(Mismatch(case, f"P(R={r})", Fraction(per_rank, total), pmf[r]))
        if not per_rank:
            continue
        for x in range(r + 1):
            got = Fraction(int(joint[r, x]), per_rank)
            want = p_exact_units_given_rank(q, k, r, x)
            if got != want:
                bad.append(Mismatch(case, f"P(|X|={x}|R={r})", got, want))
            got = Fraction(int(joint[r, x:].sum()), per_rank)
            want = p_atleast_units_given_rank(q, k, r, x)
            if got != want:
                bad.append(Mismatch(case, f"P(|X|>={x}|R={r})", got, want))
    return bad


def check_sys(q: int, k: int, n_T: int, n: int) -> list[Mismatch]:
    case = f"sys q={q} k={k} n_T={n_T} n={n}"
    oracle = exhaustive_oracle_sys(q, k, n_T, n)
    analytic = decode_profile("sys", q, k, n, n_T)
    return [
        Mismatch(case, f"P(|X|>={x})", oracle.values[x], analytic.values[x])
        for x in range(k + 1)
        if oracle.values[x] != analytic.values[x]
    ]


def default_sweep():
    """(label, thunk) pairs for the built-in small-parameter sweep."""
    cases = []
    for q in (2, 3):
        for k in (1, 2, 3):
            for n in range(4):
                cases.append((f"ns q={q} k={k} n={n}", lambda q=q, k=k, n=n: check_ns(q, k, n)))
    for q in (2, 3):
        for k in (1, 2, 3):
            for n_T in range(1, 5):
                for n in range(n_T + 1):
                    cases.append(
                        (f"sys q={q} k={k} n_T={n_T} n={n}",
                         lambda q=q, k=k, n_T=n_T, n=n: check_sys(q, k, n_T, n))
                    )
    return cases
