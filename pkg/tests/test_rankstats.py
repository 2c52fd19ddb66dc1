from collections import Counter
from fractions import Fraction

import pytest

from oracles import all_matrices, rank_and_units
from rlnc_partial.gf import field_from_order
from rlnc_partial.rankstats import rank_pmf


def test_examples():
    assert rank_pmf(2, 1, 1).probs == {0: Fraction(1, 2), 1: Fraction(1, 2)}
    assert rank_pmf(2, 2, 1).probs == {0: Fraction(1, 4), 1: Fraction(3, 4)}
    assert rank_pmf(5, 3, 0).probs == {0: Fraction(1)}


@pytest.mark.parametrize("q", [2, 3, 4, 8])
def test_normalisation(q):
    for k in range(1, 11):
        for n in range(11):
            pmf = rank_pmf(q, k, n)
            assert sum(pmf.probs.values()) == 1
            assert all(0 <= p <= 1 for p in pmf.probs.values())


@pytest.mark.parametrize("q", [2, 3, 8])
def test_transpose_symmetry(q):
    for k in range(1, 9):
        for n in range(1, 9):
            assert rank_pmf(q, k, n).probs == rank_pmf(q, n, k).probs


@pytest.mark.parametrize("q, n, k", [(q, n, k) for q in (2, 3) for n in range(4) for k in range(1, 4)])
def test_against_enumeration(q, n, k):
    F = field_from_order(q)
    counts = Counter(rank_and_units(F, m, k)[0] for m in all_matrices(q, n, k))
    total = q ** (n * k)
    pmf = rank_pmf(q, k, n)
    assert {r: Fraction(c, total) for r, c in counts.items()} == {r: p for r, p in pmf.probs.items() if p}
