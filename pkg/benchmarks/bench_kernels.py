#!/usr/bin/env python3
"""Benchmark the compiled monomial kernel against the NumPy fallback.

Run: python3 benchmarks/bench_kernels.py [--n 1000000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from halflearn._kernels import _fallback
from halflearn.moments import _chain_arrays, enumerate_monomials

try:
    from halflearn._kernels import _monomials
except ImportError:
    _monomials = None


def best_of(repeat, fn, *args):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--full", action="store_true",
                        help="include the wide d=20 case (slow on numpy)")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    cases = [("d=8 k=4", 8, 4), ("d=3 k=6", 3, 6)]
    if args.full:
        cases.append(("d=20 k=4", 20, 4))
    print(f"{'case':<10} {'monomials':>9} {'numpy':>10} {'compiled':>10} "
          f"{'speedup':>8}")
    for name, d, k in cases:
        points = rng.standard_normal((args.n, d))
        parents, coords, _ = _chain_arrays(enumerate_monomials(d, k))
        numpy_s = best_of(args.repeat, _fallback.chain_sums, points, parents,
                          coords)
        if _monomials is None:
            print(f"{name:<10} {len(parents):>9} {numpy_s:>9.3f}s "
                  f"{'n/a':>10} {'n/a':>8}")
            continue
        ext_s = best_of(args.repeat, _monomials.chain_sums, points, parents,
                        coords)
        a = _fallback.chain_sums(points, parents, coords)
        b = _monomials.chain_sums(points, parents, coords)
        assert np.allclose(a, b, rtol=1e-11, atol=1e-9)
        print(f"{name:<10} {len(parents):>9} {numpy_s:>9.3f}s "
              f"{ext_s:>9.3f}s {numpy_s / ext_s:>7.1f}x")


if __name__ == "__main__":
    main()
