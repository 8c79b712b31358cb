"""Backend selection for the hot kernels.

Set ``NONCONGRUENT_BACKEND=numpy`` to force the vectorised numpy path even
when numba is importable. Any other value (or unset) uses numba if present.
"""
from __future__ import annotations

import os
import warnings

_requested = os.environ.get("NONCONGRUENT_BACKEND", "numba").strip().lower()

try:
    from numba import njit as _numba_njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _numba_njit = None
    HAVE_NUMBA = False

if _requested not in ("numba", "numpy"):
    warnings.warn(f"unknown NONCONGRUENT_BACKEND={_requested!r}; using default")
    _requested = "numba"

USE_NUMBA = HAVE_NUMBA and _requested == "numba"
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(func):
    """Compile ``func`` with numba when available; otherwise return it as-is.

    The uncompiled function still runs (slowly) as plain Python, which is what
    the cross-backend tests rely on when numba is missing.
    """
    if HAVE_NUMBA:
        return _numba_njit(cache=True, nogil=True)(func)
    return func
