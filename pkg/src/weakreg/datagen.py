"""Synthetic two-component benchmark data and weak-label corruption.

Points come from an equal-weight mixture of two isotropic Gaussians; the
target is 1 + noise for the first component and 2 + noise for the second.
Optional uniform junk features probe robustness. Corruption turns a
training subset into weak labels whose std is delta times the target std
over the observed points.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .errors import TooFewPoints
from .labels import Role, SplitMasks, WeakLabel

CSV_FLOAT_FMT = "%.17g"


@dataclass(frozen=True)
class MixtureSpec:
    """Two-Gaussian mixture over d dims plus optional uniform noise features."""

    d: int = 8
    m1: float = 0.0
    m2: float = 10.0
    sigma_x: float = 2.0
    sigma_eps: float = 0.1
    noise_features: int = 0

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be at least 1")
        if not self.sigma_x > 0:
            raise ValueError("sigma_x must be positive")
        if self.sigma_eps < 0:
            raise ValueError("sigma_eps must be non-negative")
        if self.noise_features < 0:
            raise ValueError("noise_features must be non-negative")


@dataclass(frozen=True)
class SplitSpec:
    """Fractions for the train/test split and label roles.

    labeled_fraction applies per mixture component within the training
    part (stratified); weak_fraction applies to the training part as a
    whole. delta scales the weak-label std relative to the target std over
    the observed points. With noisy_weak_means the observed weak mean is
    drawn around the true value at that std; otherwise it stays exact and
    only the std reports the uncertainty.
    """

    train_fraction: float = 2.0 / 3.0
    labeled_fraction: float = 0.10
    weak_fraction: float = 0.20
    delta: float = 0.1
    noisy_weak_means: bool = True

    def __post_init__(self):
        for name in ("train_fraction", "labeled_fraction", "weak_fraction"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.labeled_fraction + self.weak_fraction > 1.0:
            raise ValueError("labeled and weak fractions must sum to at most 1")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")


def generate(spec: MixtureSpec, n: int, seed=0):
    """Draw n points; returns (X, y_true, component).

    X is n-by-(d + noise_features); deterministic given the seed.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    rng = np.random.default_rng(seed)
    component = rng.integers(0, 2, size=n)
    means = np.where(component[:, None] == 0, spec.m1, spec.m2)
    X = rng.standard_normal((n, spec.d)) * spec.sigma_x + means
    y_true = 1.0 + component + rng.standard_normal(n) * spec.sigma_eps
    if spec.noise_features:
        X = np.hstack([X, rng.uniform(size=(n, spec.noise_features))])
    return X, y_true, component


def corrupt_labels(
    y_true, labeled_idx, weak_idx, test_mask, delta, rng, noisy_weak_means=True
):
    """Build per-point labels from role index sets.

    The weak-label std is delta times the std of the true target over
    labeled + weak points; weak means are drawn at that std around the
    truth when noisy_weak_means. Returns (labels, masks).
    """
    y_true = np.asarray(y_true, dtype=np.float64).reshape(-1)
    n = y_true.shape[0]
    labeled_mask = np.zeros(n, dtype=bool)
    labeled_mask[labeled_idx] = True
    weak_mask = np.zeros(n, dtype=bool)
    weak_mask[weak_idx] = True
    test_mask = np.asarray(test_mask, dtype=bool).reshape(-1)

    observed = labeled_mask | weak_mask
    sigma_y = float(np.std(y_true[observed])) if observed.any() else 0.0
    s_weak = delta * sigma_y
    weak_values = y_true[weak_mask]
    if noisy_weak_means:
        weak_values = weak_values + s_weak * rng.standard_normal(weak_values.shape[0])

    labels: list[WeakLabel] = []
    weak_pos = {int(i): k for k, i in enumerate(np.flatnonzero(weak_mask))}
    for i in range(n):
        if labeled_mask[i]:
            labels.append(WeakLabel.exact(y_true[i]))
        elif weak_mask[i]:
            labels.append(WeakLabel.weak(weak_values[weak_pos[i]], s_weak))
        elif test_mask[i]:
            labels.append(WeakLabel.unlabeled(Role.TEST))
        else:
            labels.append(WeakLabel.unlabeled())
    masks = SplitMasks(
        labeled=labeled_mask,
        weak=weak_mask,
        unlabeled=~(labeled_mask | weak_mask | test_mask),
        test=test_mask,
    )
    return labels, masks


def split_and_corrupt(y_true, component, split: SplitSpec, seed=0):
    """Train/test split plus role assignment and weak-label corruption.

    Labeled points are drawn stratified per component (at least one per
    non-empty component); weak points are drawn from the remaining
    training points without stratification. Raises TooFewPoints when a
    component has no training points to label.
    """
    y_true = np.asarray(y_true, dtype=np.float64).reshape(-1)
    component = np.asarray(component).reshape(-1)
    n = y_true.shape[0]
    rng = np.random.default_rng(seed)

    n_train = int(round(split.train_fraction * n))
    train_idx = rng.choice(n, size=n_train, replace=False)
    train_mask = np.zeros(n, dtype=bool)
    train_mask[train_idx] = True

    labeled_idx: list[int] = []
    for comp in np.unique(component):
        cand = np.flatnonzero(train_mask & (component == comp))
        if cand.size == 0:
            raise TooFewPoints(
                f"component {comp} has no training points to label"
            )
        want = int(round(split.labeled_fraction * cand.size))
        if split.labeled_fraction > 0:
            want = max(1, want)  # keep every component represented
        labeled_idx.extend(rng.choice(cand, size=want, replace=False))
    labeled_idx = np.array(sorted(labeled_idx), dtype=np.int64)

    remaining = train_mask.copy()
    remaining[labeled_idx] = False
    pool = np.flatnonzero(remaining)
    n_weak = min(int(round(split.weak_fraction * n_train)), pool.size)
    weak_idx = np.sort(rng.choice(pool, size=n_weak, replace=False))

    return corrupt_labels(
        y_true,
        labeled_idx,
        weak_idx,
        ~train_mask,
        split.delta,
        rng,
        split.noisy_weak_means,
    )


def write_dataset_csv(path, X, y_true, labels) -> None:
    """Emit the native dataset schema: f0..f{d-1}, y_true, a, s, role."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    y_true = np.asarray(y_true, dtype=np.float64).reshape(-1)
    labels = list(labels)
    if not (X.shape[0] == y_true.shape[0] == len(labels)):
        raise ValueError("X, y_true and labels must agree on the point count")
    d = X.shape[1]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"f{j}" for j in range(d)] + ["y_true", "a", "s", "role"])
        for i in range(X.shape[0]):
            row = [CSV_FLOAT_FMT % v for v in X[i]]
            lab = labels[i]
            row += [
                CSV_FLOAT_FMT % y_true[i],
                CSV_FLOAT_FMT % lab.a,
                CSV_FLOAT_FMT % lab.s,
                lab.role.value,
            ]
            writer.writerow(row)
