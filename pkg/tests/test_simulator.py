import json
from fractions import Fraction

import pytest

from rlnc_partial.errors import ReceivedExceedsTransmitted, TooLarge
from rlnc_partial.partial import decode_profile, p_sys_atleast
from rlnc_partial.rankstats import rank_pmf
from rlnc_partial.simulator import (
    TrialReport,
    exhaustive_oracle_ns,
    exhaustive_oracle_sys,
    simulate_erasure,
    simulate_ns,
    simulate_sys,
    tolerance_status,
    worker_count,
)

F = Fraction


def test_deterministic_across_workers():
    a = simulate_ns(2, 6, 7, 30000, 11, workers=1)
    b = simulate_ns(2, 6, 7, 30000, 11, workers=4)
    assert a == b
    c = simulate_ns(2, 6, 7, 30000, 12, workers=1)
    assert a.units_hist != c.units_hist


def test_deterministic_erasure_and_sys():
    assert simulate_sys(3, 4, 7, 5, 9000, 3, workers=1) == simulate_sys(3, 4, 7, 5, 9000, 3, workers=3)
    e1 = simulate_erasure(2, 4, 8, "0.25", "sys", 9000, 3, workers=1)
    e2 = simulate_erasure(2, 4, 8, 0.25, "sys", 9000, 3, workers=2)
    assert e1 == e2


def test_backends_give_same_report():
    pytest.importorskip("rlnc_partial._kernels")
    a = simulate_erasure(8, 5, 9, "1/5", "ns", 3000, 1, backend="python")
    b = simulate_erasure(8, 5, 9, "1/5", "ns", 3000, 1, backend="cython")
    assert a == b


def test_ns_example():
    rep = simulate_ns(2, 2, 2, 100_000, 1)
    assert abs(rep.freq(2) - 0.375) <= 0.005
    assert abs(rep.freq(1) - 0.75) <= 0.005


def test_sys_example():
    rep = simulate_sys(2, 1, 2, 1, 100_000, 1)
    assert abs(rep.freq(1) - 0.75) <= 0.005


def test_nothing_received():
    rep = simulate_ns(5, 3, 0, 500, 0)
    assert rep.units_hist == [500, 0, 0, 0]
    assert rep.rank_counts == [500, 0, 0, 0]
    rep = simulate_erasure(2, 3, 6, 1, "ns", 500, 0)
    assert rep.freq(1) == 0.0


def test_no_erasure_keeps_everything():
    rep = simulate_erasure(2, 3, 3, 0, "sys", 200, 0)
    assert rep.freq(3) == 1.0


@pytest.mark.parametrize("trials", [1, 7, 1000])
def test_short_transmission_is_exact(trials):
    for k in (3, 5):
        for n_T in range(1, k + 1):
            for n in range(n_T + 1):
                rep = simulate_sys(2, k, n_T, n, trials, 4)
                for x in range(k + 1):
                    assert rep.freq(x) == float(p_sys_atleast(2, k, n_T, n, x))


@pytest.mark.parametrize("q, k, n", [(2, 5, 4), (2, 5, 7), (3, 4, 4), (8, 6, 5)])
def test_rank_frequencies(q, k, n):
    trials = 40_000
    rep = simulate_ns(q, k, n, trials, 2)
    pmf = rank_pmf(q, k, n)
    for r in range(k + 1):
        p = float(pmf[r])
        se = (p * (1 - p) / trials) ** 0.5
        assert abs(rep.rank_counts[r] / trials - p) <= max(4 * se, 1e-9)


@pytest.mark.parametrize("mode", ["ns", "sys"])
def test_profile_agreement(mode):
    q, k, n, n_T, trials = 3, 6, 6, 9, 40_000
    rep = simulate_ns(q, k, n, trials, 5) if mode == "ns" else simulate_sys(q, k, n_T, n, trials, 5)
    exact = decode_profile(mode, q, k, n, n_T)
    for x in range(k + 1):
        p = float(exact.values[x])
        se = (p * (1 - p) / trials) ** 0.5
        assert abs(rep.freq(x) - p) <= max(4 * se, 1e-9)


def test_report_outputs():
    rep = simulate_erasure(2, 3, 5, "0.2", "ns", 1000, 9)
    assert sum(rep.units_hist) == sum(rep.rank_counts) == 1000
    assert rep.profile().is_valid()
    lines = rep.to_csv().splitlines()
    assert lines[0] == ",".join(TrialReport.CSV_HEADER)
    assert len(lines) == 5
    assert lines[1].startswith("ns,2,3,5,,1/5,0,1000,9,1000,")
    data = json.loads(rep.summary_line())
    assert data["eps"] == "1/5" and data["units_hist"] == rep.units_hist
    assert rep.se(0) == 0.0


def test_validation():
    with pytest.raises(ReceivedExceedsTransmitted):
        simulate_sys(2, 3, 3, 4, 10, 0)
    with pytest.raises(ValueError):
        simulate_ns(2, 3, 3, 0, 0)
    with pytest.raises(ValueError):
        simulate_erasure(2, 3, 3, 0.5, "bogus", 10, 0)
    with pytest.raises(ValueError):
        simulate_erasure(2, 3, 3, 1.5, "ns", 10, 0)


def test_tolerance_status():
    assert tolerance_status(0.005, 0.0) == "pass"
    assert tolerance_status(0.03, 0.01) == "pass"
    assert tolerance_status(0.035, 0.01) == "flag"
    assert tolerance_status(0.05, 0.01) == "fail"


def test_worker_count(monkeypatch):
    monkeypatch.setenv("RLNC_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("RLNC_THREADS", "0")
    assert worker_count() >= 1
    monkeypatch.setenv("RLNC_THREADS", "junk")
    assert worker_count() >= 1


def test_oracle_examples():
    assert exhaustive_oracle_ns(2, 2, 2).values == {0: 1, 1: F(3, 4), 2: F(3, 8)}
    assert exhaustive_oracle_ns(2, 1, 1).values[1] == F(1, 2)
    assert exhaustive_oracle_sys(2, 1, 2, 1).values[1] == F(3, 4)
    assert int(exhaustive_oracle_ns(3, 2, 2).joint.sum()) == 81


def test_oracle_guards():
    with pytest.raises(TooLarge):
        exhaustive_oracle_ns(8, 4, 4)
    with pytest.raises(TooLarge):
        exhaustive_oracle_sys(2, 5, 12, 6)
    with pytest.raises(ReceivedExceedsTransmitted):
        exhaustive_oracle_sys(2, 2, 2, 3)
