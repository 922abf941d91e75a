"""Dense pairwise similarity and the standard graph Laplacian.

Used only by the dense baseline solver; the scalable path builds its
similarity from cluster ensembles instead (see weakreg.ensemble).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DenseMemoryGuard, NonFiniteFeature
from .lowrank import DenseSymmetric

KERNEL_FAMILIES = ("gaussian_rbf", "exponential")

# Refuse to allocate the n*n similarity past this point; at 8 bytes per
# entry the matrix alone would exceed 3.2 GB.
DENSE_GUARD_N = 20_000


@dataclass(frozen=True)
class KernelSpec:
    """Stationary kernel: gaussian_rbf exp(-h^2 / 2*l^2) or exponential
    exp(-h / l), both scaled by `variance`."""

    family: str = "gaussian_rbf"
    length_scale: float = 1.0
    variance: float = 1.0

    def __post_init__(self):
        if self.family not in KERNEL_FAMILIES:
            raise ValueError(
                f"unknown kernel family {self.family!r}; expected one of {KERNEL_FAMILIES}"
            )
        if not self.length_scale > 0:
            raise ValueError("length_scale must be positive")
        if not self.variance > 0:
            raise ValueError("variance must be positive")


def similarity_matrix(X: np.ndarray, spec: KernelSpec) -> DenseSymmetric:
    """Pairwise kernel matrix W with W_ii = variance.

    Raises NonFiniteFeature on NaN/inf features and DenseMemoryGuard when
    n exceeds DENSE_GUARD_N (the dense baseline does not scale past that).
    """
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    n = X.shape[0]
    if n > DENSE_GUARD_N:
        raise DenseMemoryGuard(
            f"n={n} exceeds the dense similarity limit of {DENSE_GUARD_N}; "
            "use the low-rank ensemble path for samples this large"
        )
    if not np.all(np.isfinite(X)):
        raise NonFiniteFeature("feature matrix contains non-finite entries")

    sq_norms = np.einsum("ij,ij->i", X, X)
    sq_dists = sq_norms[:, None] + sq_norms[None, :] - 2.0 * (X @ X.T)
    np.maximum(sq_dists, 0.0, out=sq_dists)
    if spec.family == "gaussian_rbf":
        W = spec.variance * np.exp(-sq_dists / (2.0 * spec.length_scale**2))
    else:
        W = spec.variance * np.exp(-np.sqrt(sq_dists) / spec.length_scale)
    W = 0.5 * (W + W.T)
    np.fill_diagonal(W, spec.variance)
    return DenseSymmetric(W)


def graph_laplacian(W) -> DenseSymmetric:
    """L = D - W with D the diagonal of row sums; rows of L sum to zero."""
    if not isinstance(W, DenseSymmetric):
        W = DenseSymmetric(W)  # raises AsymmetricInput when not symmetric
    L = -W.entries.copy()
    idx = np.diag_indices_from(L)
    L[idx] += W.entries.sum(axis=1)
    return DenseSymmetric(L)
