"""Selects the jitted or pure-numpy implementation of the hot kernels.

The choice is made once at import from the WEAKREG_BACKEND environment
variable: "numba" (default when numba is importable), "numpy", or "auto".
Tools that want to compare both in one process can call set_backend().
"""

import logging
import os

from . import _lloyd_numpy

log = logging.getLogger(__name__)

ENV_VAR = "WEAKREG_BACKEND"
_CHOICES = ("auto", "numba", "numpy")

_active_name = "numpy"
_active_lloyd = _lloyd_numpy.lloyd_iteration


def _load_numba_impl():
    from . import _lloyd_numba

    return _lloyd_numba.lloyd_iteration


def set_backend(name: str) -> str:
    """Switch the active backend; returns the name actually in effect."""
    global _active_name, _active_lloyd
    if name not in _CHOICES:
        raise ValueError(f"unknown backend {name!r}, expected one of {_CHOICES}")
    if name == "numpy":
        _active_name, _active_lloyd = "numpy", _lloyd_numpy.lloyd_iteration
        return _active_name
    try:
        impl = _load_numba_impl()
    except ImportError:
        if name == "numba":
            log.warning("numba backend requested but numba is not importable; using numpy")
        _active_name, _active_lloyd = "numpy", _lloyd_numpy.lloyd_iteration
        return _active_name
    _active_name, _active_lloyd = "numba", impl
    return _active_name


def active_backend() -> str:
    return _active_name


def lloyd_iteration(X, centroids, old_labels):
    """Dispatch to the active backend (late-bound so set_backend takes effect)."""
    return _active_lloyd(X, centroids, old_labels)


_env = os.environ.get(ENV_VAR, "auto").strip().lower() or "auto"
if _env not in _CHOICES:
    log.warning("ignoring invalid %s=%r; using auto", ENV_VAR, _env)
    _env = "auto"
set_backend(_env)
