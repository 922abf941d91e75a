#!/usr/bin/env python3
"""Compare the jitted and pure-numpy backends on the hot kernels.

Times the raw Lloyd iteration, full k-means ensemble builds, and an
end-to-end low-rank fit under both backends. The first jitted call is
excluded from timing (compilation). Equivalent to flipping the
WEAKREG_BACKEND environment variable, but in one process.

Usage: python benchmarks/bench_backends.py [--n 200000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from weakreg import (
    EnsembleConfig,
    MixtureSpec,
    SolverParams,
    SplitSpec,
    backend,
    build_ensemble,
    coassociation_degree,
    coassociation_factor,
    fit_lowrank,
    generate,
    split_and_corrupt,
)


def time_call(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_lloyd(X, k, repeats):
    rng = np.random.default_rng(0)
    centroids = np.ascontiguousarray(X[rng.choice(X.shape[0], k, replace=False)])
    old = np.full(X.shape[0], -1, dtype=np.int64)
    rows = {}
    for name in ("numpy", "numba"):
        if backend.set_backend(name) != name:
            continue
        backend.lloyd_iteration(X, centroids, old)  # warm (jit compile)
        rows[name] = time_call(lambda: backend.lloyd_iteration(X, centroids, old), repeats)
    return rows


def bench_ensemble(X, config, repeats):
    rows = {}
    for name in ("numpy", "numba"):
        if backend.set_backend(name) != name:
            continue
        build_ensemble(X[:1000], config)  # warm
        rows[name] = time_call(lambda: build_ensemble(X, config), repeats)
    return rows


def bench_full_fit(X, labels, config, repeats):
    params = SolverParams()
    rows = {}

    def fit():
        ens = build_ensemble(X, config)
        fit_lowrank(X, labels, params, coassociation_factor(ens), coassociation_degree(ens))

    for name in ("numpy", "numba"):
        if backend.set_backend(name) != name:
            continue
        rows[name] = time_call(fit, repeats)
    return rows


def show(title, rows):
    print(f"\n{title}")
    for name, seconds in rows.items():
        print(f"  {name:>6}: {seconds * 1000:10.2f} ms")
    if len(rows) == 2:
        print(f"  speedup (numpy/numba): {rows['numpy'] / rows['numba']:.2f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200_000, help="sample size")
    parser.add_argument("--k", type=int, default=8, help="clusters for the raw kernel")
    parser.add_argument("--repeats", type=int, default=5, help="timed repeats (best kept)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    active = backend.active_backend()
    print(f"n={args.n}, initial backend: {active}")
    X, y, comp = generate(MixtureSpec(sigma_eps=0.1), args.n, seed=args.seed)
    labels, _ = split_and_corrupt(y, comp, SplitSpec(), seed=args.seed + 1)
    X = np.ascontiguousarray(X)
    config = EnsembleConfig(r=10, k_start=2, seed=args.seed)

    try:
        show(f"single Lloyd iteration (k={args.k})", bench_lloyd(X, args.k, args.repeats))
        show("ensemble build (r=10, k=2)", bench_ensemble(X, config, args.repeats))
        show("full low-rank fit", bench_full_fit(X, labels, config, args.repeats))
    finally:
        backend.set_backend(active)


if __name__ == "__main__":
    main()
