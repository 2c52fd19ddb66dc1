"""Monte Carlo and exhaustive verification of the partial-decoding formulas.

A receiver recovers source packet ``i`` iff the unit vector ``e_i`` lies in
the row space of the received matrix. In reduced row echelon form every
pivot column is zero outside its pivot row, so a combination of RREF rows
equals ``e_i`` only if it is a single row; hence |X| is the number of RREF
rows that are themselves unit vectors. The kernels count exactly that.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _backend
from .channel import parse_eps
from .errors import ReceivedExceedsTransmitted, TooLarge
from .gf import FieldSpec, field_from_order
from .partial import NON_SYSTEMATIC, SYSTEMATIC, DecodeProfile
from .qcombin import binomial
from .rng import derive_key

CHUNK = 8192
ORACLE_NS_LIMIT = 1 << 24
ORACLE_SYS_LIMIT = 1 << 26

MODE_CODES = {
    (NON_SYSTEMATIC, False): 0,
    (SYSTEMATIC, False): 1,
    (NON_SYSTEMATIC, True): 2,
    (SYSTEMATIC, True): 3,
}


@dataclass(frozen=True)
class GFMatrix:
    field: FieldSpec
    entries: tuple[tuple[int, ...], ...]
    cols: int

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, cols: int | None = None) -> "GFMatrix":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("cols required for an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
            for v in r:
                field.check(v)
        return cls(field, rows, cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)


def rref(mat: GFMatrix) -> GFMatrix:
    """Reduced row echelon form; zero rows last."""
    F = mat.field
    A = [list(r) for r in mat.entries]
    n, k = mat.rows, mat.cols
    rank = 0
    for c in range(k):
        piv = next((i for i in range(rank, n) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        s = F.inv(A[rank][c])
        A[rank] = [F.mul(s, v) for v in A[rank]]
        for i in range(n):
            f = A[i][c]
            if i != rank and f:
                A[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(A[i], A[rank])]
        rank += 1
    return GFMatrix(F, tuple(tuple(r) for r in A), k)


def rank(mat: GFMatrix) -> int:
    return sum(1 for r in rref(mat).entries if any(r))


def count_recoverable(mat: GFMatrix) -> int:
    """|X|: number of unit vectors in the row space of ``mat``."""
    return sum(1 for r in rref(mat).entries if sum(1 for v in r if v) == 1)


def tolerance_status(gap: float, se: float) -> str:
    """``pass`` within max(0.01, 3 SE), ``flag`` within max(0.01, 4 SE), else ``fail``."""
    if gap <= max(0.01, 3 * se):
        return "pass"
    if gap <= max(0.01, 4 * se):
        return "flag"
    return "fail"


def worker_count() -> int:
    raw = os.environ.get("RLNC_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


@dataclass
class TrialReport:
    mode: str
    q: int
    k: int
    n: int | None
    n_T: int | None
    eps: Fraction | None
    trials: int
    seed: int
    units_hist: list[int]  # units_hist[v] = #trials with |X| = v
    rank_counts: list[int]  # rank_counts[r] = #trials with rank r
    backend: str = field(default="", compare=False)

    def count_atleast(self, x: int) -> int:
        return sum(self.units_hist[x:])

    def freq(self, x: int) -> float:
        return self.count_atleast(x) / self.trials

    def se(self, x: int) -> float:
        p = self.freq(x)
        return math.sqrt(p * (1 - p) / self.trials)

    def profile(self) -> DecodeProfile:
        return DecodeProfile(
            self.mode, self.q, self.k, self.n, self.n_T,
            {x: self.freq(x) for x in range(self.k + 1)}, "simulated",
        )

    def csv_rows(self) -> list[list]:
        eps = "" if self.eps is None else str(self.eps)
        return [
            [self.mode, self.q, self.k, _blank(self.n_T), _blank(self.n), eps, x,
             self.trials, self.seed, self.count_atleast(x), repr(self.freq(x)), repr(self.se(x))]
            for x in range(self.k + 1)
        ]

    CSV_HEADER = ["mode", "q", "k", "n_T", "n", "eps", "x", "trials", "seed", "count", "freq", "se"]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.CSV_HEADER)
        w.writerows(self.csv_rows())
        return buf.getvalue()

    def summary_line(self) -> str:
        return json.dumps(
            {
                "mode": self.mode, "q": self.q, "k": self.k, "n": self.n, "n_T": self.n_T,
                "eps": None if self.eps is None else str(self.eps),
                "trials": self.trials, "seed": self.seed,
                "units_hist": self.units_hist, "rank_counts": self.rank_counts,
            },
            sort_keys=True,
        )


def _blank(v):
    return "" if v is None else v


def _run(mode: str, erasure: bool, q: int, k: int, n: int, n_T: int, eps: Fraction,
         trials: int, seed: int, workers: int | None, backend: str | None,
         modulus=None) -> tuple[np.ndarray, np.ndarray, str]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    F = field_from_order(q, modulus)
    kern = _backend.get(backend)
    key = derive_key(seed, mode, "erasure" if erasure else "fixed", q, k, n, n_T, eps, F.modulus)
    code = MODE_CODES[(mode, erasure)]
    bounds = [(t, min(t + CHUNK, trials)) for t in range(0, trials, CHUNK)]

    def job(b):
        return kern.simulate_trials(key[0], key[1], q, F.p, F.m, k, code, n, n_T,
                                    eps.numerator, eps.denominator, b[0], b[1], F.exp, F.log)

    workers = workers or worker_count()
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, bounds))
    else:
        parts = [job(b) for b in bounds]
    ranks = np.concatenate([p[0] for p in parts])
    units = np.concatenate([p[1] for p in parts])
    name = "cython" if kern.__name__.endswith("._kernels") else "python"
    return ranks, units, name


def _report(mode, q, k, n, n_T, eps, trials, seed, ranks, units, name) -> TrialReport:
    return TrialReport(
        mode, q, k, n, n_T, eps, trials, seed,
        np.bincount(units, minlength=k + 1).tolist(),
        np.bincount(ranks, minlength=k + 1).tolist(),
        name,
    )


def simulate_ns(q: int, k: int, n: int, trials: int, seed: int, *, workers=None, backend=None,
                modulus=None) -> TrialReport:
    """``trials`` independent uniform n x k matrices over GF(q)."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    r, u, name = _run(NON_SYSTEMATIC, False, q, k, n, 0, Fraction(0), trials, seed, workers, backend, modulus)
    return _report(NON_SYSTEMATIC, q, k, n, None, None, trials, seed, r, u, name)


def simulate_sys(q: int, k: int, n_T: int, n: int, trials: int, seed: int, *, workers=None, backend=None,
                modulus=None) -> TrialReport:
    """Receive a uniformly random ``n``-subset of ``n_T`` systematic transmissions."""
    if n > n_T:
        raise ReceivedExceedsTransmitted(f"n={n} > n_T={n_T}")
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    r, u, name = _run(SYSTEMATIC, False, q, k, n, n_T, Fraction(0), trials, seed, workers, backend, modulus)
    return _report(SYSTEMATIC, q, k, n, n_T, None, trials, seed, r, u, name)


def simulate_erasure(q: int, k: int, n_T: int, eps, mode: str, trials: int, seed: int,
                     *, workers=None, backend=None, modulus=None) -> TrialReport:
    """Each of ``n_T`` transmissions is erased independently with probability ``eps``."""
    eps = parse_eps(eps)
    if eps.denominator >= 1 << 32:
        raise ValueError("erasure probability denominator must be below 2**32")
    if mode not in (NON_SYSTEMATIC, SYSTEMATIC):
        raise ValueError(f"unknown mode {mode!r}")
    r, u, name = _run(mode, True, q, k, 0, n_T, eps, trials, seed, workers, backend, modulus)
    return _report(mode, q, k, None, n_T, eps, trials, seed, r, u, name)


# -- exhaustive oracles ---------------------------------------------------
def _enumerate_matrices(q: int, rows: int, k: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((idx.size, rows * k), dtype=np.int64)
    for d in range(rows * k):
        idx, digits[:, d] = np.divmod(idx, q)
    return digits.reshape(stop - start, rows, k)


def _joint_counts(F: FieldSpec, fixed: np.ndarray, free_rows: int, k: int, kern) -> np.ndarray:
    """joint[r, u] over all assignments of ``free_rows`` coded rows below ``fixed``."""
    q = F.q
    total = q ** (free_rows * k)
    joint = np.zeros((k + 1, k + 1), dtype=np.int64)
    step = 1 << 16
    for s in range(0, total, step):
        free = _enumerate_matrices(q, free_rows, k, s, min(s + step, total))
        mats = np.concatenate([np.broadcast_to(fixed, (free.shape[0],) + fixed.shape), free], axis=1)
        r, u = kern.reduce_batch(mats, q, F.p, F.m, F.exp, F.log)
        np.add.at(joint, (r, u), 1)
    return joint


def _profile_from_joint(joint: np.ndarray, total, k: int) -> dict[int, Fraction]:
    per_units = joint.sum(axis=0)
    return {x: Fraction(int(per_units[x:].sum()), total) for x in range(k + 1)}


def exhaustive_oracle_ns(q: int, k: int, n: int, *, backend=None) -> DecodeProfile:
    """Exact profile by enumerating all q^(nk) matrices; ``joint[r, |X|]`` attached."""
    if q ** (n * k) > ORACLE_NS_LIMIT:
        raise TooLarge(f"q^(nk) = {q}^{n * k} exceeds {ORACLE_NS_LIMIT}")
    F = field_from_order(q)
    joint = _joint_counts(F, np.zeros((0, k), dtype=np.int64), n, k, _backend.get(backend))
    values = _profile_from_joint(joint, q ** (n * k), k)
    return DecodeProfile(NON_SYSTEMATIC, q, k, n, None, values, "exhaustive", joint)


def exhaustive_oracle_sys(q: int, k: int, n_T: int, n: int, *, backend=None) -> DecodeProfile:
    """Exact systematic profile: every received subset, every coded-row assignment."""
    if n > n_T:
        raise ReceivedExceedsTransmitted(f"n={n} > n_T={n_T}")
    if binomial(n_T, n) * q ** (n * k) > ORACLE_SYS_LIMIT:
        raise TooLarge(f"C({n_T},{n}) q^(nk) exceeds {ORACLE_SYS_LIMIT}")
    F = field_from_order(q)
    kern = _backend.get(backend)
    n_src = min(k, n_T)
    subsets = list(itertools.combinations(range(n_T), n))
    values = {x: Fraction(0) for x in range(k + 1)}
    # joint[r, |X|] here holds probabilities, not counts
    joint = np.zeros((k + 1, k + 1), dtype=object)
    for subset in subsets:
        src = [pos for pos in subset if pos < n_src]
        coded = len(subset) - len(src)
        fixed = np.zeros((len(src), k), dtype=np.int64)
        fixed[np.arange(len(src)), src] = 1
        j = _joint_counts(F, fixed, coded, k, kern)
        weight = Fraction(1, len(subsets) * q ** (coded * k))
        prof = _profile_from_joint(j, 1, k)
        for x in range(k + 1):
            values[x] += weight * prof[x]
        joint = joint + j.astype(object) * weight
    return DecodeProfile(SYSTEMATIC, q, k, n, n_T, values, "exhaustive", joint)
