from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlnc_partial.channel import ErasureScenario, erasure_curve, p_erasure_atleast, parse_eps
from rlnc_partial.partial import p_ns_atleast, p_sys_atleast
from rlnc_partial.qcombin import binomial

F = Fraction
EPS_GRID = [F(i, 10) for i in range(11)]


def test_parse_eps():
    assert parse_eps(0.2) == F(1, 5)
    assert parse_eps("0.2") == F(1, 5)
    assert parse_eps("1/3") == F(1, 3)
    assert parse_eps(F(2, 7)) == F(2, 7)
    assert parse_eps(1) == 1
    for bad in ("-0.1", 1.5, "2"):
        with pytest.raises(ValueError):
            parse_eps(bad)


def test_scenario_validation():
    assert ErasureScenario(2, 3, 4, "0.5", 1).eps == F(1, 2)
    with pytest.raises(ValueError):
        ErasureScenario(2, 3, 4, 0.5, 4)
    with pytest.raises(ValueError):
        ErasureScenario(2, 3, 4, 0.5, 1, mode="bogus")


def test_single_packet_example():
    assert p_erasure_atleast(2, 1, 1, F(1, 2), 1) == F(1, 4)


@pytest.mark.parametrize("mode", ["ns", "sys"])
def test_no_erasures(mode):
    for q in (2, 3):
        for k in range(1, 5):
            for n_T in range(0, 8):
                for x in range(k + 1):
                    want = p_ns_atleast(q, k, n_T, x) if mode == "ns" else p_sys_atleast(q, k, n_T, n_T, x)
                    assert p_erasure_atleast(q, k, n_T, 0, x, mode) == want


@pytest.mark.parametrize("mode", ["ns", "sys"])
def test_everything_erased(mode):
    for k in range(1, 5):
        for n_T in range(6):
            assert p_erasure_atleast(2, k, n_T, 1, 0, mode) == 1
            for x in range(1, k + 1):
                assert p_erasure_atleast(2, k, n_T, 1, x, mode) == 0


def test_mixture_weights():
    for n_T in range(8):
        for eps in EPS_GRID:
            assert sum(binomial(n_T, n) * (1 - eps) ** n * eps ** (n_T - n) for n in range(n_T + 1)) == 1


def test_mixture_by_hand():
    # k=2, n_T=3, q=2, x=1: weight each n by its binomial probability
    eps = F(1, 3)
    want = sum(binomial(3, n) * (1 - eps) ** n * eps ** (3 - n) * p_ns_atleast(2, 2, n, 1) for n in range(4))
    assert p_erasure_atleast(2, 2, 3, eps, 1) == want


@pytest.mark.parametrize("mode", ["ns", "sys"])
@pytest.mark.parametrize("q", [2, 8])
def test_monotone_in_eps(mode, q):
    for k in (1, 3, 6, 10):
        for n_T in (k, k + 3, 2 * k):
            for x in range(k + 1):
                vals = [p_erasure_atleast(q, k, n_T, e, x, mode) for e in EPS_GRID]
                assert all(a >= b for a, b in zip(vals, vals[1:]))


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([2, 3, 4]), k=st.integers(1, 6), n_T=st.integers(0, 12),
       num=st.integers(0, 20), mode=st.sampled_from(["ns", "sys"]))
def test_profile_bounds(q, k, n_T, num, mode):
    eps = F(num, 20)
    vals = [p_erasure_atleast(q, k, n_T, eps, x, mode) for x in range(k + 1)]
    assert vals[0] == 1
    assert all(0 <= v <= 1 for v in vals)
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_curve_order_and_monotone():
    xs = [2, 4, 10, 16, 20]
    rows = erasure_curve(2, 20, "0.2", "ns", xs, range(20, 61))
    assert len(rows) == 205
    assert [(r[0], r[1]) for r in rows] == [(n, x) for n in range(20, 61) for x in xs]
    for x in xs:
        col = [p for _, xx, p in rows if xx == x]
        assert all(a <= b for a, b in zip(col, col[1:]))


def test_curve_zero_column():
    rows = erasure_curve(8, 5, F(1, 4), "sys", [0, 1], range(0, 12))
    assert all(p == 1 for _, x, p in rows if x == 0)


def test_systematic_beats_plain_under_erasures():
    for n_T in range(10, 25):
        for x in (1, 3, 5):
            assert p_erasure_atleast(2, 10, n_T, F(1, 5), x, "sys") >= p_erasure_atleast(2, 10, n_T, F(1, 5), x, "ns")
