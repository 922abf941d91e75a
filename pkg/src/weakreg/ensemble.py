"""Randomized k-means ensembles and their co-association similarity.

The ensemble's weighted co-association matrix H (H_ij = weighted fraction
of partitions placing i and j in the same cluster) is never formed: it is
kept as the factor R with H = R @ R.T, where R stacks one sqrt-weighted
one-hot assignment block per partition. Its degree diagonal comes straight
from cluster sizes.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from . import backend
from .errors import KExceedsN
from .lowrank import DiagonalMatrix, LowRankFactor

WEIGHT_MODES = ("uniform", "validity_index")


@dataclass(frozen=True)
class Partition:
    """A single flat clustering: labels in [0, k) plus cluster sizes."""

    labels: np.ndarray
    k: int
    cluster_sizes: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        sizes = np.asarray(self.cluster_sizes, dtype=np.int64).reshape(-1)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "cluster_sizes", sizes)
        if self.k < 1 or sizes.shape[0] != self.k:
            raise ValueError("cluster_sizes must have one entry per cluster")
        if labels.size and (labels.min() < 0 or labels.max() >= self.k):
            raise ValueError("labels must lie in [0, k)")
        if sizes.sum() != labels.shape[0]:
            raise ValueError("cluster_sizes must sum to the point count")

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @classmethod
    def from_labels(cls, labels, k: int) -> "Partition":
        labels = np.asarray(labels, dtype=np.int64).reshape(-1)
        sizes = np.bincount(labels, minlength=k)
        return cls(labels, k, sizes)


@dataclass(frozen=True)
class PartitionEnsemble:
    partitions: tuple
    weights: np.ndarray

    def __post_init__(self):
        parts = tuple(self.partitions)
        w = np.asarray(self.weights, dtype=np.float64).reshape(-1)
        object.__setattr__(self, "partitions", parts)
        object.__setattr__(self, "weights", w)
        if len(parts) < 1:
            raise ValueError("ensemble needs at least one partition")
        if w.shape[0] != len(parts):
            raise ValueError("one weight per partition required")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1 within 1e-12")
        n = parts[0].n
        if any(p.n != n for p in parts):
            raise ValueError("partitions must cover the same points")

    @property
    def r(self) -> int:
        return len(self.partitions)

    @property
    def n(self) -> int:
        return self.partitions[0].n

    @property
    def total_clusters(self) -> int:
        return int(sum(p.k for p in self.partitions))


@dataclass(frozen=True)
class EnsembleConfig:
    """Settings for one ensemble build.

    The cluster count for run l (0-based) is k_start + l * k_step, so
    k_step=0 keeps it constant and k_step=1 increments per run.
    """

    r: int = 10
    k_start: int = 2
    k_step: int = 0
    max_iters: int = 100
    seed: int = 0
    weight_mode: str = "uniform"

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be at least 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.weight_mode not in WEIGHT_MODES:
            raise ValueError(f"weight_mode must be one of {WEIGHT_MODES}")
        if any(self.k_for_run(l) < 1 for l in range(self.r)):
            raise ValueError("every run's cluster count must be at least 1")

    def k_for_run(self, l: int) -> int:
        return self.k_start + l * self.k_step


def kmeans(X: np.ndarray, k: int, max_iters: int = 100, seed=0) -> Partition:
    """Lloyd's algorithm with random distinct-point initialization.

    Deterministic given the seed. Stops at an assignment fixpoint or after
    max_iters. Nearest-centroid ties go to the lowest cluster index. A
    cluster that empties is reseeded at the point currently farthest from
    its own centroid, so the output always has k non-empty clusters.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("X must be an n-by-d matrix")
    n = X.shape[0]
    if not 1 <= k <= n:
        raise KExceedsN(f"k={k} must lie in [1, n={n}]")

    rng = np.random.default_rng(seed)
    centroids = X[rng.choice(n, size=k, replace=False)].copy()
    labels = np.full(n, -1, dtype=np.int64)
    for _ in range(max_iters):
        new_labels, sums, counts, changed, dmin = backend.lloyd_iteration(
            X, centroids, labels
        )
        labels = new_labels
        reseeded = False
        empty = np.flatnonzero(counts == 0)
        for c in empty:
            # only steal from clusters that keep at least one member
            eligible = np.where(counts[labels] >= 2, dmin, -np.inf)
            far = int(np.argmax(eligible))
            old = labels[far]
            counts[old] -= 1
            sums[old] -= X[far]
            labels[far] = c
            counts[c] = 1
            sums[c] = X[far]
            dmin[far] = -np.inf
            reseeded = True
        if changed == 0 and not reseeded:
            break
        centroids = sums / counts[:, None]
    return Partition.from_labels(labels, k)


def weights_from_validity(scores) -> np.ndarray:
    """Normalize non-negative validity scores into ensemble weights."""
    scores = np.asarray(scores, dtype=np.float64).reshape(-1)
    if np.any(scores < 0):
        raise ValueError("validity scores must be non-negative")
    total = scores.sum()
    if total <= 0:
        return np.full(scores.shape[0], 1.0 / scores.shape[0])
    return scores / total


def _mean_within_cluster_sse(X: np.ndarray, part: Partition) -> float:
    centroids = np.zeros((part.k, X.shape[1]))
    np.add.at(centroids, part.labels, X)
    centroids /= part.cluster_sizes[:, None]
    diff = X - centroids[part.labels]
    return float(np.einsum("ij,ij->", diff, diff) / part.n)


def build_ensemble(X: np.ndarray, config: EnsembleConfig) -> PartitionEnsemble:
    """Run r k-means clusterings with per-run seeds spawned from config.seed.

    Weights are uniform 1/r, or (for weight_mode="validity_index") the
    min-max-scaled negative mean within-cluster SSE of each run, normalized
    to sum to 1; degenerate all-equal scores fall back to uniform.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    seeds = np.random.SeedSequence(config.seed).spawn(config.r)
    parts = tuple(
        kmeans(X, config.k_for_run(l), config.max_iters, seeds[l])
        for l in range(config.r)
    )
    if config.weight_mode == "uniform":
        weights = np.full(config.r, 1.0 / config.r)
    else:
        raw = np.array([-_mean_within_cluster_sse(X, p) for p in parts])
        span = raw.max() - raw.min()
        if span <= 0:
            scores = np.ones(config.r)
        else:
            scores = (raw - raw.min()) / span
        weights = weights_from_validity(scores)
    return PartitionEnsemble(parts, weights)


def coassociation_factor(ensemble: PartitionEnsemble) -> LowRankFactor:
    """Stacked sqrt-weighted one-hot blocks R with R @ R.T == H.

    Block l is sqrt(w_l) * Z_l where Z_l(i, c) indicates membership of
    point i in cluster c of partition l; the factor has sum(k_l) columns.
    """
    n, m = ensemble.n, ensemble.total_clusters
    rows = np.tile(np.arange(n, dtype=np.int64), ensemble.r)
    cols = np.empty(n * ensemble.r, dtype=np.int64)
    data = np.empty(n * ensemble.r, dtype=np.float64)
    offset = 0
    for l, part in enumerate(ensemble.partitions):
        block = slice(l * n, (l + 1) * n)
        cols[block] = offset + part.labels
        data[block] = np.sqrt(ensemble.weights[l])
        offset += part.k
    factor = sparse.csr_matrix((data, (rows, cols)), shape=(n, m))
    return LowRankFactor.from_array(factor)


def coassociation_degree(ensemble: PartitionEnsemble) -> DiagonalMatrix:
    """Row sums of H from cluster sizes alone: sum_l w_l * size_of_own_cluster."""
    deg = np.zeros(ensemble.n, dtype=np.float64)
    for w, part in zip(ensemble.weights, ensemble.partitions):
        deg += w * part.cluster_sizes[part.labels]
    return DiagonalMatrix(deg)
