"""Transductive solvers for weakly supervised regression.

Both solvers minimize the same objective: squared-distance data terms
between predicted and observed Gaussian labels on the observed points,
a manifold penalty sum_ij W_ij * [(a_i - a_j)^2 + (s_i - s_j)^2] scaled
by gamma, and an L2 ridge scaled by beta. Mean and std parts decouple
into two linear systems sharing the matrix B + 2*gamma*L.

fit_lowrank solves them through the implicit co-association similarity
(Woodbury path, O(n*m + m^3)); fit_dense assembles the kernel similarity
explicitly and factorizes the full n-by-n system (baseline path).
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InconsistentView
from .kernels import KernelSpec, graph_laplacian, similarity_matrix
from .labels import LabeledView, Role, WeakLabel
from .lowrank import (
    DenseSymmetric,
    DiagonalMatrix,
    LowRankFactor,
    dense_solve,
    woodbury_solve,
)

log = logging.getLogger(__name__)

WEAK_TREATMENTS = ("weak", "unlabeled")


@dataclass(frozen=True)
class SolverParams:
    """gamma scales the manifold penalty, beta the L2 ridge; beta > 0 keeps
    the system positive definite."""

    gamma: float = 0.001
    beta: float = 0.001

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if not self.beta > 0:
            raise ValueError("beta must be positive")


@dataclass(frozen=True)
class Prediction:
    """Fitted Gaussian label parameters per point, in original order."""

    a_star: np.ndarray
    sigma_star: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a_star, dtype=np.float64).reshape(-1)
        s = np.asarray(self.sigma_star, dtype=np.float64).reshape(-1)
        object.__setattr__(self, "a_star", a)
        object.__setattr__(self, "sigma_star", s)
        if a.shape != s.shape:
            raise DimensionMismatch("a_star and sigma_star must have equal length")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(s))):
            raise ValueError("predictions must be finite")

    @property
    def n(self) -> int:
        return self.a_star.shape[0]


def assemble_rhs(labels, view: LabeledView, beta: float):
    """Right-hand sides and data-term diagonal in view (labeled-first) order.

    Returns (y10, s10, B): y10 and s10 hold the observed means and stds in
    the first n1 positions and zeros afterwards; B is diagonal with
    beta + 1 on observed positions and beta elsewhere.
    """
    labels = list(labels)
    if len(labels) != view.n:
        raise InconsistentView(
            f"view covers {view.n} points but {len(labels)} labels given"
        )
    for pos, idx in enumerate(view.order):
        lab = labels[idx]
        if pos < view.n1 and lab.role not in (Role.LABELED, Role.WEAK):
            raise InconsistentView(
                f"position {pos} is inside the observed block but point "
                f"{idx} has role {lab.role.value}"
            )
        if pos >= view.n1 and lab.role == Role.LABELED:
            raise InconsistentView(
                f"labeled point {idx} fell outside the observed block"
            )
    y10 = np.zeros(view.n)
    s10 = np.zeros(view.n)
    b = np.full(view.n, beta)
    for pos in range(view.n1):
        lab = labels[view.order[pos]]
        y10[pos] = lab.a
        s10[pos] = lab.s
        b[pos] += 1.0
    return y10, s10, DiagonalMatrix(b)


def _clamp_sigma(sigma: np.ndarray) -> np.ndarray:
    """Clip negative fitted stds to zero; never silently."""
    negative = sigma < 0
    if np.any(negative):
        log.warning(
            "clamped %d negative sigma* entries to 0 (most negative: %.3e)",
            int(negative.sum()),
            float(sigma.min()),
        )
        sigma = np.where(negative, 0.0, sigma)
    return sigma


def fit_lowrank(
    X,
    labels,
    params: SolverParams,
    factor: LowRankFactor,
    degree: DiagonalMatrix,
) -> Prediction:
    """Fit via the implicit similarity factor (Woodbury path).

    factor and degree must come from the same ensemble; the result equals
    the direct dense solve of (B + 2*gamma*(D' - R@R.T)) x = rhs. X is
    used only for size validation (the similarity is already encoded).
    """
    labels = list(labels)
    n = len(labels)
    if X is not None and np.shape(X)[0] != n:
        raise DimensionMismatch("X and labels disagree on the point count")
    if factor.n != n or degree.n != n:
        raise DimensionMismatch("factor/degree size does not match the labels")
    view = LabeledView.from_labels(labels)
    y10, s10, B = assemble_rhs(labels, view, params.beta)
    y = view.to_original(y10)
    s = view.to_original(s10)
    G = DiagonalMatrix(view.to_original(B.values) + 2.0 * params.gamma * degree.values)
    a_star = woodbury_solve(G, factor, params.gamma, y)
    sigma_star = _clamp_sigma(woodbury_solve(G, factor, params.gamma, s))
    return Prediction(a_star, sigma_star)


def _demote_weak(labels):
    return [
        WeakLabel.unlabeled() if lab.role == Role.WEAK else lab for lab in labels
    ]


def fit_dense(
    X,
    labels,
    params: SolverParams,
    spec: KernelSpec,
    treat_weak_as: str = "weak",
) -> Prediction:
    """Fit via the explicit kernel similarity (dense baseline path).

    treat_weak_as="unlabeled" discards the uncertain labels entirely (the
    semi-supervised baseline); "weak" keeps them in the data term. Raises
    DenseMemoryGuard past the dense size limit.
    """
    if treat_weak_as not in WEAK_TREATMENTS:
        raise ValueError(f"treat_weak_as must be one of {WEAK_TREATMENTS}")
    labels = list(labels)
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[0] != len(labels):
        raise DimensionMismatch("X and labels disagree on the point count")
    if treat_weak_as == "unlabeled":
        labels = _demote_weak(labels)
    W = similarity_matrix(X, spec)
    L = graph_laplacian(W)
    view = LabeledView.from_labels(labels)
    y10, s10, B = assemble_rhs(labels, view, params.beta)
    y = view.to_original(y10)
    s = view.to_original(s10)
    system = 2.0 * params.gamma * L.entries
    system[np.diag_indices_from(system)] += view.to_original(B.values)
    M = DenseSymmetric(system)
    a_star = dense_solve(M, y)
    sigma_star = _clamp_sigma(dense_solve(M, s))
    return Prediction(a_star, sigma_star)
