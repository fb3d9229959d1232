"""Kernel dispatch: numba-jitted hot loops with a pure-Python fallback.

Set ``COSTLAB_DISABLE_NUMBA=1`` before import to run every kernel as plain
Python over numpy arrays.  Both paths execute the same source, so operation
tallies are bit-for-bit identical; only wall-clock speed differs (see
benchmarks/bench_kernels.py).
"""

from __future__ import annotations

import os
import warnings

DISABLE_ENV = "COSTLAB_DISABLE_NUMBA"


def _numba_disabled() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in {"1", "true", "yes"}


if _numba_disabled():
    NUMBA_ENABLED = False
else:
    try:
        import numba  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False
        warnings.warn(
            "numba is not importable; costlab kernels will run as pure Python "
            "(set COSTLAB_DISABLE_NUMBA=1 to silence this warning)",
            RuntimeWarning,
            stacklevel=2,
        )

if NUMBA_ENABLED:
    from numba import njit
else:

    def njit(*args, **kwargs):  # type: ignore[misc]
        """No-op stand-in for numba.njit on the pure-Python path."""
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap
