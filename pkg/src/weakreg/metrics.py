"""Evaluation metrics over fitted Gaussian labels.

The dissimilarity between two Gaussian labels is the squared 2-Wasserstein
distance, which for one-dimensional Gaussians has the closed form
(a_p - a_q)^2 + (s_p - s_q)^2. MWD scores predictions against exact truth
values (truth std 0), so it reduces to MSE when all predicted stds vanish.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyTestSet
from .regression import Prediction


@dataclass(frozen=True)
class GaussianLabel:
    mean: float
    std: float

    def __post_init__(self):
        if self.std < 0:
            raise ValueError("std must be non-negative")


def w2_gaussian(p: GaussianLabel, q: GaussianLabel) -> float:
    """Squared 2-Wasserstein distance between two Gaussian labels."""
    return (p.mean - q.mean) ** 2 + (p.std - q.std) ** 2


def _select_test(predictions: Prediction, truth, test_mask):
    test_mask = np.asarray(test_mask, dtype=bool).reshape(-1)
    if test_mask.shape[0] != predictions.n:
        raise DimensionMismatch("test_mask length must match the predictions")
    n_test = int(test_mask.sum())
    if n_test == 0:
        raise EmptyTestSet("test mask selects no points")
    truth = np.asarray(truth, dtype=np.float64).reshape(-1)
    if truth.shape[0] != n_test:
        raise DimensionMismatch(
            f"truth has {truth.shape[0]} values but the mask selects {n_test}"
        )
    return predictions.a_star[test_mask], predictions.sigma_star[test_mask], truth


def mwd(predictions: Prediction, truth, test_mask) -> float:
    """Mean squared-Wasserstein distance to exact truth over the test set:
    mean[(truth_i - a*_i)^2 + sigma*_i^2]."""
    a, s, y = _select_test(predictions, truth, test_mask)
    return float(np.mean((y - a) ** 2 + s**2))


def mae(predictions: Prediction, truth, test_mask) -> float:
    """Mean absolute error of the predicted means over the test set."""
    a, _, y = _select_test(predictions, truth, test_mask)
    return float(np.mean(np.abs(y - a)))
