"""Compare the numba and numpy backends of each hot kernel.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from noncongruent import kernels
from noncongruent._accel import HAVE_NUMBA
from noncongruent.gf2 import BitMatrix

RNG = np.random.default_rng(0)
MATS = np.stack([BitMatrix.from_array(RNG.integers(0, 2, (16, 16))).data for _ in range(2000)])
BASES = RNG.integers(1, 2**30, 200_000)

CASES = {
    "class_number |D|=2.8e9": lambda be: kernels.class_number_count(2803700651, be),
    "class_number |D|=4.2e7": lambda be: kernels.class_number_count(42090427, be),
    "tunnell n=2.9e8": lambda be: kernels.tunnell_counts(289483979, be),
    "rank_batch 2000x16x16": lambda be: kernels.rank_batch(MATS, be),
    "powmod 2e5 bases": lambda be: kernels.powmod_vec(BASES, 12345, 1000003, be),
    "ternary d=12805 |D|=2.4e6": lambda be: kernels.ternary_search(12805, 2445755, 1600, 1600, 3, be),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    print(f"{'kernel':<28}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if HAVE_NUMBA else ""))
    for name, fn in CASES.items():
        if HAVE_NUMBA:
            fn("numba")  # compile outside the timing
        ts = [best_of(lambda: fn(b), args.repeat) for b in backends]
        line = f"{name:<28}" + "".join(f"{t:>11.3f}s" for t in ts)
        if HAVE_NUMBA:
            line += f"{ts[0] / ts[1]:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
