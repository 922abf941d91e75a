"""Pure-numpy Lloyd iteration, the fallback for the jitted kernel.

Kept vectorized but chunked so the n*k distance block never grows past a
few MB regardless of problem size.
"""

import numpy as np

_CHUNK_BUDGET = 4_000_000  # floats per (chunk, k, d) distance block


def lloyd_iteration(X, centroids, old_labels):
    """One assignment + accumulation pass of Lloyd's algorithm.

    Returns (labels, sums, counts, changed, dmin) where sums/counts are the
    per-cluster coordinate sums and memberships for the centroid update,
    changed counts points whose assignment differs from old_labels, and
    dmin[i] is the squared distance of point i to its assigned centroid.
    Nearest-centroid ties go to the lowest cluster index.
    """
    n, d = X.shape
    k = centroids.shape[0]
    labels = np.empty(n, dtype=np.int64)
    dmin = np.empty(n, dtype=np.float64)
    chunk = max(1, _CHUNK_BUDGET // max(1, k * d))
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        diff = X[start:stop, None, :] - centroids[None, :, :]
        d2 = np.einsum("ikj,ikj->ik", diff, diff)
        labels[start:stop] = np.argmin(d2, axis=1)
        dmin[start:stop] = d2[np.arange(stop - start), labels[start:stop]]
    sums = np.zeros((k, d), dtype=np.float64)
    np.add.at(sums, labels, X)
    counts = np.bincount(labels, minlength=k).astype(np.int64)
    changed = int(np.count_nonzero(labels != old_labels))
    return labels, sums, counts, changed, dmin
