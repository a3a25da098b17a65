"""Selects between numba-compiled kernels and the pure-numpy fallback.

Set ``MAJORANA_NUMBA=0`` in the environment before import to force the numpy
path. When numba is not installed the numpy path is used regardless.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("MAJORANA_NUMBA", "1") not in ("0", "false", "no")


def njit(fn):
    """``numba.njit(cache=True)`` when available, otherwise the function itself."""
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
