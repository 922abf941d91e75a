"""Independent reference implementations used as test oracles.

Everything here is deliberately naive (loops, explicit dense matrices,
quadrature) and never calls the code paths it is checking.
"""

import numpy as np
from scipy.integrate import quad
from scipy.special import ndtri

from weakreg import Partition, PartitionEnsemble


def explicit_coassociation(ensemble: PartitionEnsemble) -> np.ndarray:
    """H = sum_l w_l * [same-cluster indicator], by double loop."""
    n = ensemble.n
    H = np.zeros((n, n))
    for w, part in zip(ensemble.weights, ensemble.partitions):
        for i in range(n):
            for j in range(n):
                if part.labels[i] == part.labels[j]:
                    H[i, j] += w
    return H


def random_ensemble(rng, n, r, k_max=5) -> PartitionEnsemble:
    """Ensemble of random label partitions (every cluster non-empty)."""
    parts = []
    for _ in range(r):
        k = int(rng.integers(1, min(k_max, n) + 1))
        labels = rng.integers(0, k, size=n)
        labels[rng.permutation(n)[:k]] = np.arange(k)  # force non-empty
        parts.append(Partition.from_labels(labels, k))
    weights = rng.uniform(0.2, 1.0, size=r)
    return PartitionEnsemble(tuple(parts), weights / weights.sum())


def kernel_matrix_loop(X, spec) -> np.ndarray:
    """Entrywise scalar-loop kernel evaluation."""
    n = X.shape[0]
    W = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            h = np.sqrt(np.sum((X[i] - X[j]) ** 2))
            if spec.family == "gaussian_rbf":
                W[i, j] = spec.variance * np.exp(-(h**2) / (2 * spec.length_scale**2))
            else:
                W[i, j] = spec.variance * np.exp(-h / spec.length_scale)
    return W


def w2_quantile_integral(a_p, s_p, a_q, s_q) -> float:
    """Squared 2-Wasserstein by quadrature of the quantile-difference integral."""

    def integrand(u):
        z = ndtri(u)
        return ((a_p + s_p * z) - (a_q + s_q * z)) ** 2

    value, _ = quad(integrand, 0.0, 1.0, limit=300)
    return value


def assemble_lowrank_system(factor, degree, b_diag, gamma):
    """Explicit dense matrix B + 2*gamma*(D' - R R^T) the low-rank path solves."""
    R = factor.to_dense()
    return np.diag(b_diag) + 2.0 * gamma * (np.diag(degree.values) - R @ R.T)


def objective_value(a, sig, labels, W, gamma, beta) -> float:
    """The full regularized objective, evaluated literally."""
    J = 0.0
    for i, lab in enumerate(labels):
        if lab.observed:
            J += (lab.a - a[i]) ** 2 + (lab.s - sig[i]) ** 2
    da = a[:, None] - a[None, :]
    ds = sig[:, None] - sig[None, :]
    J += gamma * float(np.sum(W * (da**2 + ds**2)))
    J += beta * float(a @ a + sig @ sig)
    return J


def objective_gradient(a, sig, labels, W, gamma, beta):
    """Analytic gradient of objective_value w.r.t. (a, sig)."""
    obs = np.array([lab.observed for lab in labels], dtype=float)
    y = np.array([lab.a if lab.observed else 0.0 for lab in labels])
    s = np.array([lab.s if lab.observed else 0.0 for lab in labels])
    L = np.diag(W.sum(axis=1)) - W
    grad_a = 2.0 * obs * (a - y) + 4.0 * gamma * (L @ a) + 2.0 * beta * a
    grad_s = 2.0 * obs * (sig - s) + 4.0 * gamma * (L @ sig) + 2.0 * beta * sig
    return grad_a, grad_s


def objective_gradient_fd(a, sig, labels, W, gamma, beta, h=1e-6):
    """Central finite differences of objective_value."""
    n = a.shape[0]
    grad_a = np.empty(n)
    grad_s = np.empty(n)
    for i in range(n):
        ap, am = a.copy(), a.copy()
        ap[i] += h
        am[i] -= h
        grad_a[i] = (
            objective_value(ap, sig, labels, W, gamma, beta)
            - objective_value(am, sig, labels, W, gamma, beta)
        ) / (2 * h)
        sp, sm = sig.copy(), sig.copy()
        sp[i] += h
        sm[i] -= h
        grad_s[i] = (
            objective_value(a, sp, labels, W, gamma, beta)
            - objective_value(a, sm, labels, W, gamma, beta)
        ) / (2 * h)
    return grad_a, grad_s
