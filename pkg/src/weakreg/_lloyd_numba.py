"""Jitted Lloyd iteration. Same contract as weakreg._lloyd_numpy."""

import numpy as np
from numba import njit


@njit(cache=True)
def lloyd_iteration(X, centroids, old_labels):
    n, d = X.shape
    k = centroids.shape[0]
    labels = np.empty(n, dtype=np.int64)
    dmin = np.empty(n, dtype=np.float64)
    sums = np.zeros((k, d), dtype=np.float64)
    counts = np.zeros(k, dtype=np.int64)
    changed = 0
    for i in range(n):
        best = 0
        best_d = np.inf
        for c in range(k):
            acc = 0.0
            for j in range(d):
                delta = X[i, j] - centroids[c, j]
                acc += delta * delta
            if acc < best_d:  # strict: ties keep the lowest index
                best_d = acc
                best = c
        labels[i] = best
        dmin[i] = best_d
        if best != old_labels[i]:
            changed += 1
        counts[best] += 1
        for j in range(d):
            sums[best, j] += X[i, j]
    return labels, sums, counts, changed, dmin
