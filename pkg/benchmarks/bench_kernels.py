"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--trials 20000] [--repeat 3]
"""
import argparse
import time

import numpy as np

from rlnc_partial import _kernels_py
from rlnc_partial.gf import field_from_order
from rlnc_partial.rng import derive_key

try:
    from rlnc_partial import _kernels
except ImportError:
    _kernels = None

CASES = [
    # (label, q, k, mode, n, n_T, eps_num, eps_den)
    ("ns q=2 k=20 n=30", 2, 20, 0, 30, 0, 0, 1),
    ("sys q=2 k=20 n_T=30 n=25", 2, 20, 1, 25, 30, 0, 1),
    ("ns erasure q=2 k=20 n_T=40 eps=1/5", 2, 20, 2, 0, 40, 1, 5),
    ("ns q=8 k=30 n=32", 8, 30, 0, 32, 0, 0, 1),
    ("sys erasure q=8 k=30 n_T=45 eps=1/5", 8, 30, 3, 0, 45, 1, 5),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    print(f"{'case':40s}" + "".join(f"{name:>12s}" for name, _ in backends) + "     speedup")
    for label, q, k, mode, n, n_T, en, ed in CASES:
        F = field_from_order(q)
        key = derive_key(0, "bench", label)
        times = []
        results = []
        for _, kern in backends:
            call = lambda kern=kern: kern.simulate_trials(
                key[0], key[1], q, F.p, F.m, k, mode, n, n_T, en, ed, 0, args.trials, F.exp, F.log)
            times.append(best_of(call, args.repeat))
            results.append(call())
        if len(results) == 2:
            assert all(np.array_equal(a, b) for a, b in zip(*results)), "backends disagree"
        speed = f"{times[0] / times[-1]:10.1f}x" if len(times) == 2 else ""
        print(f"{label:40s}" + "".join(f"{t:11.3f}s" for t in times) + speed)

    print()
    print("reduce_batch on pre-generated uniform matrices")
    for q, n, k in ((2, 30, 20), (8, 32, 30), (3, 12, 10)):
        F = field_from_order(q)
        mats = np.random.default_rng(1).integers(0, q, size=(args.trials, n, k))
        times = [best_of(lambda kern=kern: kern.reduce_batch(mats, q, F.p, F.m, F.exp, F.log), args.repeat)
                 for _, kern in backends]
        speed = f"{times[0] / times[-1]:10.1f}x" if len(times) == 2 else ""
        print(f"{f'q={q} {n}x{k}':40s}" + "".join(f"{t:11.3f}s" for t in times) + speed)


if __name__ == "__main__":
    main()
