import subprocess
import sys

import numpy as np
import pytest
from numpy.testing import assert_allclose

from weakreg import backend
from weakreg._lloyd_numpy import lloyd_iteration as lloyd_numpy

numba_impl = pytest.importorskip("weakreg._lloyd_numba", reason="numba unavailable")
lloyd_numba = numba_impl.lloyd_iteration


@pytest.fixture
def restore_backend():
    active = backend.active_backend()
    yield
    backend.set_backend(active)


def random_case(seed, n=200, d=5, k=7):
    rng = np.random.default_rng(seed)
    X = np.ascontiguousarray(rng.standard_normal((n, d)))
    centroids = np.ascontiguousarray(X[rng.choice(n, k, replace=False)])
    old = rng.integers(-1, k, size=n).astype(np.int64)
    return X, centroids, old


@pytest.mark.parametrize("seed", range(6))
def test_backends_agree_on_one_iteration(seed):
    X, centroids, old = random_case(seed)
    out_np = lloyd_numpy(X, centroids, old)
    out_nb = lloyd_numba(X, centroids, old)
    assert np.array_equal(out_np[0], out_nb[0])  # labels
    assert_allclose(out_np[1], out_nb[1], rtol=1e-12, atol=1e-12)  # sums
    assert np.array_equal(out_np[2], out_nb[2])  # counts
    assert out_np[3] == out_nb[3]  # changed
    assert_allclose(out_np[4], out_nb[4], rtol=1e-12, atol=1e-12)  # dmin


def test_tie_goes_to_lowest_index_in_both():
    X = np.array([[0.0, 0.0]])
    centroids = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])  # all distance 1
    old = np.array([-1], dtype=np.int64)
    for impl in (lloyd_numpy, lloyd_numba):
        labels = impl(X, centroids, old)[0]
        assert labels[0] == 0


def test_full_kmeans_identical_across_backends(restore_backend):
    from weakreg import kmeans

    rng = np.random.default_rng(3)
    X = rng.standard_normal((500, 6)) + 8.0 * rng.integers(0, 3, 500)[:, None]
    backend.set_backend("numpy")
    p_np = kmeans(X, 5, seed=11)
    backend.set_backend("numba")
    p_nb = kmeans(X, 5, seed=11)
    assert np.array_equal(p_np.labels, p_nb.labels)


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        backend.set_backend("fortran")


def test_env_flag_selects_numpy():
    code = "import weakreg; print(weakreg.active_backend())"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "WEAKREG_BACKEND": "numpy"},
    )
    assert out.stdout.strip() == "numpy"


def test_chunked_numpy_path_matches_single_chunk(monkeypatch):
    from weakreg import _lloyd_numpy

    X, centroids, old = random_case(99, n=333)
    full = lloyd_numpy(X, centroids, old)
    monkeypatch.setattr(_lloyd_numpy, "_CHUNK_BUDGET", 64)
    chunked = lloyd_numpy(X, centroids, old)
    assert np.array_equal(full[0], chunked[0])
    assert_allclose(full[1], chunked[1], rtol=1e-12, atol=1e-12)
