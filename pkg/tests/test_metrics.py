import numpy as np
import pytest
from numpy.testing import assert_allclose

from oracles import w2_quantile_integral
from weakreg import GaussianLabel, Prediction, mae, mwd, w2_gaussian
from weakreg.errors import DimensionMismatch, EmptyTestSet


class TestW2Gaussian:
    def test_identical_distributions(self):
        p = GaussianLabel(0.0, 1.0)
        assert w2_gaussian(p, p) == 0.0

    def test_closed_form_arithmetic(self):
        assert w2_gaussian(GaussianLabel(1.0, 0.5), GaussianLabel(3.0, 1.5)) == 5.0

    def test_matches_quantile_integral_oracle(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            p = GaussianLabel(rng.normal(0, 2), rng.uniform(0.05, 2.0))
            q = GaussianLabel(rng.normal(0, 2), rng.uniform(0.05, 2.0))
            closed = w2_gaussian(p, q)
            reference = w2_quantile_integral(p.mean, p.std, q.mean, q.std)
            assert abs(closed - reference) <= 1e-4 * max(abs(reference), 1e-12)

    def test_symmetry_and_translation_invariance(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            p = GaussianLabel(rng.normal(), rng.uniform(0, 2))
            q = GaussianLabel(rng.normal(), rng.uniform(0, 2))
            assert w2_gaussian(p, q) == w2_gaussian(q, p)
            c = rng.normal()
            shifted = w2_gaussian(
                GaussianLabel(p.mean + c, p.std), GaussianLabel(q.mean + c, q.std)
            )
            assert_allclose(shifted, w2_gaussian(p, q), rtol=1e-12, atol=1e-12)

    def test_rejects_negative_std(self):
        with pytest.raises(ValueError):
            GaussianLabel(0.0, -0.1)


class TestMWD:
    def test_perfect_prediction(self):
        pred = Prediction(np.array([1.0, 2.0]), np.zeros(2))
        assert mwd(pred, np.array([1.0, 2.0]), np.array([True, True])) == 0.0

    def test_single_point(self):
        pred = Prediction(np.array([2.0]), np.array([1.0]))
        assert mwd(pred, np.array([1.0]), np.array([True])) == 2.0

    def test_matches_loop_oracle(self):
        rng = np.random.default_rng(8)
        n = 37
        pred = Prediction(rng.normal(size=n), rng.uniform(0, 1, n))
        mask = rng.random(n) < 0.4
        mask[0] = True
        truth = rng.normal(size=int(mask.sum()))
        looped = 0.0
        k = 0
        for i in range(n):
            if mask[i]:
                looped += (truth[k] - pred.a_star[i]) ** 2 + pred.sigma_star[i] ** 2
                k += 1
        looped /= mask.sum()
        assert_allclose(mwd(pred, truth, mask), looped, rtol=0, atol=1e-12)

    def test_reduces_to_mse_when_sigma_zero(self):
        rng = np.random.default_rng(9)
        n = 20
        a = rng.normal(size=n)
        truth = rng.normal(size=n)
        mask = np.ones(n, dtype=bool)
        no_sigma = Prediction(a, np.zeros(n))
        with_sigma = Prediction(a, rng.uniform(0.1, 1.0, n))
        mse = float(np.mean((truth - a) ** 2))
        assert_allclose(mwd(no_sigma, truth, mask), mse, rtol=1e-12)
        assert mwd(with_sigma, truth, mask) > mse

    def test_empty_test_set(self):
        pred = Prediction(np.zeros(3), np.zeros(3))
        with pytest.raises(EmptyTestSet):
            mwd(pred, np.array([]), np.zeros(3, dtype=bool))

    def test_truth_length_checked(self):
        pred = Prediction(np.zeros(3), np.zeros(3))
        with pytest.raises(DimensionMismatch):
            mwd(pred, np.zeros(3), np.array([True, False, True]))


class TestMAE:
    def test_perfect_prediction(self):
        pred = Prediction(np.array([1.0, 2.0]), np.zeros(2))
        assert mae(pred, np.array([1.0, 2.0]), np.ones(2, dtype=bool)) == 0.0

    def test_symmetric_errors(self):
        pred = Prediction(np.array([1.0, 1.0]), np.zeros(2))
        truth = np.array([2.0, 0.0])  # errors +1 and -1
        assert mae(pred, truth, np.ones(2, dtype=bool)) == 1.0

    def test_matches_loop_oracle(self):
        rng = np.random.default_rng(10)
        n = 29
        pred = Prediction(rng.normal(size=n), np.zeros(n))
        mask = rng.random(n) < 0.5
        mask[-1] = True
        truth = rng.normal(size=int(mask.sum()))
        looped = float(np.mean(np.abs(truth - pred.a_star[mask])))
        assert_allclose(mae(pred, truth, mask), looped, rtol=0, atol=1e-12)
