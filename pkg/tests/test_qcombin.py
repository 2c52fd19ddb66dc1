import math
from fractions import Fraction

import pytest

from oracles import subspaces_by_dimension
from rlnc_partial.gf import field_from_order
from rlnc_partial.qcombin import binomial, exact_str, gaussian_binomial, q_ladder, to_decimal_str


@pytest.mark.parametrize("m, d, want", [(5, 2, 10), (4, 0, 1), (3, 5, 0), (3, -1, 0), (0, 0, 1)])
def test_binomial(m, d, want):
    assert binomial(m, d) == want


@pytest.mark.parametrize("m, d, q, want", [(7, 0, 5, 1), (2, 1, 2, 3), (4, 2, 2, 35), (3, -1, 2, 0), (3, 4, 2, 0)])
def test_gaussian_binomial_examples(m, d, q, want):
    assert gaussian_binomial(m, d, q) == want


@pytest.mark.parametrize("r, n, q, want", [(0, 5, 3, 1), (1, 2, 2, 3), (2, 2, 2, 6), (3, 2, 2, 0)])
def test_q_ladder(r, n, q, want):
    assert q_ladder(r, n, q) == want


@pytest.mark.parametrize("q", [2, 3, 4, 8])
def test_pascal_recurrence(q):
    for m in range(1, 13):
        for d in range(1, m):
            assert gaussian_binomial(m, d, q) == gaussian_binomial(m - 1, d - 1, q) + q**d * gaussian_binomial(m - 1, d, q)


@pytest.mark.parametrize("q", [2, 3, 8])
def test_symmetry(q):
    for m in range(13):
        for d in range(m + 1):
            assert gaussian_binomial(m, d, q) == gaussian_binomial(m, m - d, q)


def test_total_subspace_counts():
    # total number of subspaces of GF(2)^m
    galois_numbers = [1, 2, 5, 16, 67, 374, 2825]  # OEIS A006116
    for m, g in enumerate(galois_numbers):
        assert sum(gaussian_binomial(m, d, 2) for d in range(m + 1)) == g


def test_matches_subspace_enumeration_q2():
    F = field_from_order(2)
    for m in range(6):
        levels = subspaces_by_dimension(F, m)
        for d in range(m + 1):
            assert gaussian_binomial(m, d, 2) == len(levels[d])


def test_matches_subspace_enumeration_q3():
    F = field_from_order(3)
    for m in range(4):
        levels = subspaces_by_dimension(F, m)
        for d in range(m + 1):
            assert gaussian_binomial(m, d, 3) == len(levels[d])


@pytest.mark.parametrize("q", [2, 3, 8])
def test_ladder_identity(q):
    for n in range(13):
        for k in range(13):
            for r in range(min(n, k) + 1):
                lhs = gaussian_binomial(n, r, q) * q_ladder(r, k, q)
                rhs = gaussian_binomial(k, r, q) * q_ladder(r, n, q)
                assert lhs == rhs


def test_ladder_counts_independent_rows():
    # q_ladder(r, n, q) = number of ordered r-tuples of independent vectors in GF(q)^n
    assert q_ladder(2, 3, 2) == 7 * 6
    assert q_ladder(3, 3, 2) == math.prod(8 - 2**i for i in range(3))


def test_decimal_rendering():
    assert to_decimal_str(Fraction(3, 8)) == "0.375"
    assert to_decimal_str(Fraction(1, 3)) == "0.333333333333"
    assert to_decimal_str(Fraction(2, 3), 3) == "0.667"
    # half-even on an exact tie
    assert to_decimal_str(Fraction(125, 1000), 2) == "0.12"
    assert to_decimal_str(Fraction(135, 1000), 2) == "0.14"
    assert exact_str(Fraction(6, 8)) == "3/4"
