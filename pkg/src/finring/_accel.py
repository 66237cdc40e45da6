"""Numba switch for the hot kernels.

Set ``FINRING_DISABLE_NUMBA=1`` to run every kernel through its pure
numpy/Python path. Results are identical either way; only speed differs.
"""
import os

_DISABLED = os.environ.get("FINRING_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and not _DISABLED


def njit(func):
    """Compile ``func`` in nopython mode when numba is enabled."""
    if numba is None:
        return func
    return numba.njit(cache=True)(func)
