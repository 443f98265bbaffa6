"""Compare the numba and numpy kernels on the rule sweep and canonicalization.

Usage: python3 benchmarks/bench_kernels.py [--profiles 2,2,3 2,3,3] [--repeat 3]
"""

import argparse
import time

import numpy as np

from tridensity import kernels


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--profiles", nargs="+", default=["2,2,2", "2,2,3", "2,3,3"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    # warm the JIT cache so compile time is not billed to the first profile
    kernels.sweep((2, 2, 2), backend="numba")
    kernels.canonical_codes((2, 2, 2), np.arange(8), backend="numba")

    print(f"{'profile':>8} {'stage':>6} {'numba s':>9} {'numpy s':>9} {'speedup':>8}  match")
    for text in args.profiles:
        prof = tuple(int(x) for x in text.split(","))
        t_nb, (c_nb, s_nb) = timed(lambda: kernels.sweep(prof, backend="numba"), args.repeat)
        t_np, (c_np, s_np) = timed(lambda: kernels.sweep(prof, backend="numpy"), args.repeat)
        same = bool((c_nb == c_np).all() and np.array_equal(s_nb, s_np))
        print(f"{text:>8} {'sweep':>6} {t_nb:9.3f} {t_np:9.3f} {t_np / t_nb:8.1f}  {same}")

        t_nb, k_nb = timed(lambda: kernels.canonical_codes(prof, s_nb, backend="numba"), args.repeat)
        t_np, k_np = timed(lambda: kernels.canonical_codes(prof, s_nb, backend="numpy"), args.repeat)
        same = bool(np.array_equal(k_nb, k_np))
        print(f"{text:>8} {'canon':>6} {t_nb:9.3f} {t_np:9.3f} {t_np / t_nb:8.1f}  {same}")


if __name__ == "__main__":
    main()
