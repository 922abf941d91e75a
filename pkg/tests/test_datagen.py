import numpy as np
import pytest
from numpy.testing import assert_allclose

from weakreg import MixtureSpec, Role, SplitSpec, generate, split_and_corrupt
from weakreg.errors import TooFewPoints


class TestGenerate:
    def test_degenerate_limit_pins_points_and_labels(self):
        spec = MixtureSpec(sigma_x=1e-12, sigma_eps=0.0)
        X, y, comp = generate(spec, 50, seed=0)
        expected_means = np.where(comp[:, None] == 0, 0.0, 10.0)
        assert np.max(np.abs(X - expected_means)) < 1e-9
        assert_allclose(y, 1.0 + comp)

    def test_sample_moments(self):
        X, y, comp = generate(MixtureSpec(), 10_000, seed=42)
        assert abs(y.mean() - 1.5) < 0.02
        assert abs(comp.mean() - 0.5) < 0.02
        for c in (0, 1):
            resid = y[comp == c] - (1.0 + c)
            assert abs(resid.std() - 0.1) < 0.01  # sigma_eps within 10%

    def test_noise_features_appended_uniform(self):
        spec = MixtureSpec(noise_features=2)
        X, _, _ = generate(spec, 5000, seed=3)
        assert X.shape[1] == 10
        noise = X[:, 8:]
        assert noise.min() >= 0.0 and noise.max() <= 1.0
        assert abs(noise.mean() - 0.5) < 0.02

    def test_deterministic(self):
        a = generate(MixtureSpec(), 100, seed=5)
        b = generate(MixtureSpec(), 100, seed=5)
        for x, y in zip(a, b):
            assert np.array_equal(x, y)

    def test_rejects_tiny_n(self):
        with pytest.raises(ValueError):
            generate(MixtureSpec(), 1)


class TestSplitAndCorrupt:
    def test_zero_delta_collapses_to_exact(self):
        _, y, comp = generate(MixtureSpec(), 300, seed=1)
        labels, masks = split_and_corrupt(y, comp, SplitSpec(delta=0.0), seed=2)
        for i in np.flatnonzero(masks.weak):
            assert labels[i].s == 0.0
            assert labels[i].a == y[i]

    def test_role_counts(self):
        # 1350 points at train fraction 2/3 -> 900 training points
        _, y, comp = generate(MixtureSpec(), 1350, seed=4)
        labels, masks = split_and_corrupt(y, comp, SplitSpec(), seed=5)
        assert masks.test.sum() == 450
        n_labeled = masks.labeled.sum()
        n_weak = masks.weak.sum()
        assert abs(n_labeled - 90) <= 1
        assert n_weak == 180
        assert masks.unlabeled.sum() == 1350 - 450 - n_labeled - n_weak

    def test_folded_normal_mean_of_weak_noise(self):
        _, y, comp = generate(MixtureSpec(sigma_eps=0.1), 6000, seed=6)
        delta = 0.1
        labels, masks = split_and_corrupt(y, comp, SplitSpec(delta=delta), seed=7)
        observed = masks.labeled | masks.weak
        sigma_y = np.std(y[observed])
        deviations = [abs(labels[i].a - y[i]) for i in np.flatnonzero(masks.weak)]
        expected = sigma_y * delta * np.sqrt(2.0 / np.pi)
        assert abs(np.mean(deviations) - expected) <= 0.2 * expected

    def test_weak_std_is_delta_sigma_y(self):
        _, y, comp = generate(MixtureSpec(), 900, seed=8)
        labels, masks = split_and_corrupt(y, comp, SplitSpec(delta=0.25), seed=9)
        observed = masks.labeled | masks.weak
        sigma_y = np.std(y[observed])
        for i in np.flatnonzero(masks.weak):
            assert_allclose(labels[i].s, 0.25 * sigma_y, rtol=1e-12)

    def test_exact_means_mode(self):
        _, y, comp = generate(MixtureSpec(), 400, seed=10)
        spec = SplitSpec(delta=0.3, noisy_weak_means=False)
        labels, masks = split_and_corrupt(y, comp, spec, seed=11)
        for i in np.flatnonzero(masks.weak):
            assert labels[i].a == y[i]
            assert labels[i].s > 0

    def test_masks_partition_and_roles_agree(self):
        _, y, comp = generate(MixtureSpec(), 500, seed=12)
        labels, masks = split_and_corrupt(y, comp, SplitSpec(), seed=13)
        total = (
            masks.labeled.astype(int)
            + masks.weak.astype(int)
            + masks.unlabeled.astype(int)
            + masks.test.astype(int)
        )
        assert np.all(total == 1)
        for i, lab in enumerate(labels):
            expected = (
                Role.LABELED if masks.labeled[i]
                else Role.WEAK if masks.weak[i]
                else Role.TEST if masks.test[i]
                else Role.UNLABELED
            )
            assert lab.role is expected

    def test_stratified_within_one_of_proportional(self):
        _, y, comp = generate(MixtureSpec(), 2000, seed=14)
        labels, masks = split_and_corrupt(y, comp, SplitSpec(), seed=15)
        train = ~masks.test
        for c in (0, 1):
            n_c = (train & (comp == c)).sum()
            got = (masks.labeled & (comp == c)).sum()
            assert abs(got - 0.10 * n_c) <= 1

    def test_deterministic(self):
        _, y, comp = generate(MixtureSpec(), 200, seed=16)
        l1, m1 = split_and_corrupt(y, comp, SplitSpec(), seed=17)
        l2, m2 = split_and_corrupt(y, comp, SplitSpec(), seed=17)
        assert all(a == b for a, b in zip(l1, l2))
        assert np.array_equal(m1.labeled, m2.labeled)

    def test_too_few_points_when_component_untrainable(self):
        y = np.ones(4)
        comp = np.array([0, 0, 0, 1])
        # train fraction so low the singleton component may miss the
        # training part entirely; find a seed where that happens
        spec = SplitSpec(train_fraction=0.5)
        with pytest.raises(TooFewPoints):
            for seed in range(50):
                split_and_corrupt(y, comp, spec, seed=seed)

    def test_zero_labeled_fraction_labels_nothing(self):
        _, y, comp = generate(MixtureSpec(), 300, seed=20)
        labels, masks = split_and_corrupt(
            y, comp, SplitSpec(labeled_fraction=0.0), seed=21
        )
        assert masks.labeled.sum() == 0
        assert masks.weak.sum() > 0

    def test_fraction_validation(self):
        with pytest.raises(ValueError):
            SplitSpec(train_fraction=1.5)
        with pytest.raises(ValueError):
            SplitSpec(labeled_fraction=0.7, weak_fraction=0.4)
        with pytest.raises(ValueError):
            SplitSpec(delta=-0.1)
