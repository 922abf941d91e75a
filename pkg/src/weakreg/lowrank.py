"""Low-rank and diagonal linear algebra.

The central routine is woodbury_solve, which applies (G - 2*gamma*A*A^T)^-1
to a vector at O(n*m + m^3) cost by reducing the inversion to an m-by-m
system, with G diagonal and A an n-by-m factor (m typically far below n).
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy import sparse

from .errors import (
    AsymmetricInput,
    DimensionMismatch,
    NotPositiveDefinite,
    SingularInnerMatrix,
)

SPARSE_DENSITY_CUTOFF = 0.10
SYMMETRY_ATOL = 1e-12


@dataclass(frozen=True)
class DiagonalMatrix:
    """Diagonal matrix stored as its diagonal vector."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64).reshape(-1)
        object.__setattr__(self, "values", v)
        if not np.all(np.isfinite(v)):
            raise ValueError("diagonal entries must be finite")

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class DenseSymmetric:
    """Dense symmetric matrix; symmetry checked to 1e-12 per entry."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.float64)
        object.__setattr__(self, "entries", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
        if not np.allclose(m, m.T, rtol=0.0, atol=SYMMETRY_ATOL):
            raise AsymmetricInput(
                f"matrix is not symmetric within {SYMMETRY_ATOL:g} per entry"
            )

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class LowRankFactor:
    """n-by-m factor A of an implicit similarity A @ A.T.

    The n-by-n product is never materialized here. Storage is sparse CSR
    when the factor density is below SPARSE_DENSITY_CUTOFF, dense otherwise
    (one-hot cluster-assignment blocks are the sparse case that matters).
    """

    entries: object = field(repr=False)  # np.ndarray or scipy.sparse.csr_matrix
    n: int = 0
    m: int = 0

    def __post_init__(self):
        a = self.entries
        if sparse.issparse(a):
            a = sparse.csr_matrix(a, dtype=np.float64)
            if not np.all(np.isfinite(a.data)):
                raise ValueError("factor entries must be finite")
        else:
            a = np.atleast_2d(np.asarray(a, dtype=np.float64))
            if not np.all(np.isfinite(a)):
                raise ValueError("factor entries must be finite")
        if a.ndim != 2:
            raise DimensionMismatch("factor must be two-dimensional")
        if a.shape[1] < 1:
            raise DimensionMismatch("factor needs at least one column")
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "n", a.shape[0])
        object.__setattr__(self, "m", a.shape[1])

    @classmethod
    def from_array(cls, a) -> "LowRankFactor":
        """Build from any 2-D array, picking storage by density."""
        if sparse.issparse(a):
            a = sparse.csr_matrix(a, dtype=np.float64)
            a.eliminate_zeros()
            density = a.nnz / max(1, a.shape[0] * a.shape[1])
            return cls(a) if density < SPARSE_DENSITY_CUTOFF else cls(a.toarray())
        dense = np.atleast_2d(np.asarray(a, dtype=np.float64))
        density = np.count_nonzero(dense) / max(1, dense.size)
        if density < SPARSE_DENSITY_CUTOFF:
            return cls(sparse.csr_matrix(dense))
        return cls(dense)

    @property
    def is_sparse(self) -> bool:
        return sparse.issparse(self.entries)

    def to_dense(self) -> np.ndarray:
        a = self.entries
        return a.toarray() if sparse.issparse(a) else np.array(a)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return np.asarray(self.entries @ v).reshape(-1)

    def rmatvec(self, v: np.ndarray) -> np.ndarray:
        return np.asarray(self.entries.T @ v).reshape(-1)

    def weighted_gram(self, weights: np.ndarray) -> np.ndarray:
        """A.T @ diag(weights) @ A as a dense m-by-m array."""
        a = self.entries
        if sparse.issparse(a):
            g = (a.multiply(weights[:, None])).T @ a
            return np.asarray(g.toarray())
        return (a * weights[:, None]).T @ a


def woodbury_solve(
    G: DiagonalMatrix, A: LowRankFactor, gamma: float, rhs: np.ndarray
) -> np.ndarray:
    """Solve (G - 2*gamma*A@A.T) x = rhs without forming the n-by-n matrix.

    Expands the inverse as
        G^-1 rhs + 2*gamma G^-1 A (I - 2*gamma A^T G^-1 A)^-1 A^T G^-1 rhs,
    so only the m-by-m middle matrix gets factorized. That matrix is
    symmetric but not necessarily definite, hence the symmetric-indefinite
    (diagonal-pivoting) solve.

    Raises SingularInnerMatrix when the middle matrix is singular, which
    signals gamma too large for the ridge term (full matrix not positive
    definite), and DimensionMismatch on incompatible shapes.
    """
    rhs = np.asarray(rhs, dtype=np.float64).reshape(-1)
    n = G.n
    if A.n != n or rhs.shape[0] != n:
        raise DimensionMismatch(
            f"G has n={n}, factor has n={A.n}, rhs has n={rhs.shape[0]}"
        )
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if np.any(G.values <= 0):
        raise ValueError("G must have strictly positive diagonal entries")

    ginv = 1.0 / G.values
    t = ginv * rhs
    w = A.rmatvec(t)
    inner = -2.0 * gamma * A.weighted_gram(ginv)
    inner[np.diag_indices_from(inner)] += 1.0
    try:
        z = scipy.linalg.solve(inner, w, assume_a="sym")
    except np.linalg.LinAlgError as exc:
        raise SingularInnerMatrix(
            "reduced m-by-m system is singular; gamma is likely too large "
            "relative to the ridge term"
        ) from exc
    return t + 2.0 * gamma * ginv * A.matvec(z)


def degree_diagonal(A: LowRankFactor) -> DiagonalMatrix:
    """Row sums of the implicit similarity A @ A.T, computed as A (A.T 1)."""
    ones = np.ones(A.n, dtype=np.float64)
    return DiagonalMatrix(A.matvec(A.rmatvec(ones)))


def dense_solve(M: DenseSymmetric, rhs: np.ndarray) -> np.ndarray:
    """Solve M x = rhs for symmetric positive definite M via Cholesky."""
    rhs = np.asarray(rhs, dtype=np.float64).reshape(-1)
    if rhs.shape[0] != M.n:
        raise DimensionMismatch(f"matrix is {M.n}x{M.n}, rhs has length {rhs.shape[0]}")
    try:
        factor = scipy.linalg.cho_factor(M.entries, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("matrix is not positive definite") from exc
    return scipy.linalg.cho_solve(factor, rhs, check_finite=False)
