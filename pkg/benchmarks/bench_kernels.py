"""Benchmark the compiled kernels against the pure-numpy fallback.

Usage:  python benchmarks/bench_kernels.py [--repeat 5]

Covers the two hot inner loops: permutation resampling (the randomization
tests run tens of thousands of resamples per word-list comparison) and
Lloyd iterations (k-means restarts).  The linear-algebra stages (VECM,
regressor training) are BLAS-bound and have no compiled counterpart.
"""

import argparse
import time

import numpy as np

from lexecon._backend import get_backend
from lexecon._rng import repeat_uniforms
from lexecon.structure import _seed_centroids
from lexecon._rng import stream


def best_of(repeat, fn, *args):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_perm(backends, repeat):
    print("\npermutation resampling: count extreme mean differences")
    print(f"{'pool':>8} {'m':>6} {'resamples':>10} "
          + "".join(f"{name:>12}" for name in backends)
          + f"{'speedup':>10}")
    rng = np.random.default_rng(0)
    for n_pool, m, n_res in [(60, 25, 10_000), (600, 250, 10_000),
                             (4000, 1500, 2_000)]:
        pool = np.sort(rng.normal(size=n_pool))
        uniforms = repeat_uniforms(1, n_res, m)
        times = {}
        counts = set()
        for name, impl in backends.items():
            t, c = best_of(repeat, impl.perm_count_extreme, pool, m,
                           uniforms, 0.05)
            times[name] = t
            counts.add(c)
        assert len(counts) == 1, "backends disagree"
        speed = times["python"] / times["compiled"] \
            if "compiled" in times else float("nan")
        print(f"{n_pool:>8} {m:>6} {n_res:>10} "
              + "".join(f"{times[name] * 1e3:>10.1f}ms" for name in backends)
              + f"{speed:>9.1f}x")


def bench_lloyd(backends, repeat):
    print("\nk-means Lloyd iterations (k=2, best of given restarts)")
    print(f"{'points':>8} {'restarts':>9} "
          + "".join(f"{name:>12}" for name in backends)
          + f"{'speedup':>10}")
    rng = np.random.default_rng(1)
    for n, restarts in [(500, 100), (5000, 100), (50_000, 20)]:
        pts = np.vstack([rng.normal(0, 1, (n // 2, 2)),
                         rng.normal(3, 1, (n - n // 2, 2))])
        inits = [_seed_centroids(pts, 2, stream(7, r))
                 for r in range(restarts)]

        def run(impl):
            best = None
            for init in inits:
                _, _, inertia, _ = impl.lloyd(pts, init, 300)
                if best is None or inertia < best:
                    best = inertia
            return best

        times = {}
        bests = set()
        for name, impl in backends.items():
            t, b = best_of(repeat, run, impl)
            times[name] = t
            bests.add(round(b, 6))
        assert len(bests) == 1, "backends disagree"
        speed = times["python"] / times["compiled"] \
            if "compiled" in times else float("nan")
        print(f"{n:>8} {restarts:>9} "
              + "".join(f"{times[name] * 1e3:>10.1f}ms" for name in backends)
              + f"{speed:>9.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions (best is reported)")
    args = parser.parse_args()

    backends = {}
    try:
        backends["compiled"] = get_backend("compiled")
    except ImportError:
        print("compiled kernels not available; timing the fallback only")
    backends["python"] = get_backend("python")

    bench_perm(backends, args.repeat)
    bench_lloyd(backends, args.repeat)


if __name__ == "__main__":
    main()
