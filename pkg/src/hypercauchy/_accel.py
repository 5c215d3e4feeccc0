"""Numba switch.

Set ``HYPERCAUCHY_DISABLE_NUMBA=1`` to force the pure-numpy kernels, and
``HYPERCAUCHY_THREADS=<k>`` to cap the numba thread pool.
"""

import os
import warnings

_FALSY = {"", "0", "false", "no", "off"}


def _env_disabled():
    return os.environ.get("HYPERCAUCHY_DISABLE_NUMBA", "").strip().lower() not in _FALSY


# The workqueue layer avoids a noisy warning from old system TBB builds.
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    import numba
    from numba import njit, prange
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None
    prange = range

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


HAVE_NUMBA = numba is not None
NUMBA_ENABLED = HAVE_NUMBA and not _env_disabled()


def configure_threads(limit=None):
    """Apply ``limit`` (or ``HYPERCAUCHY_THREADS``) to numba's thread pool.

    Returns the thread count in effect, or 1 when numba is unavailable.
    """
    if not HAVE_NUMBA:
        return 1
    if limit is None:
        raw = os.environ.get("HYPERCAUCHY_THREADS", "").strip()
        if not raw:
            return numba.get_num_threads()
        try:
            limit = int(raw)
        except ValueError:
            warnings.warn(f"ignoring non-integer HYPERCAUCHY_THREADS={raw!r}")
            return numba.get_num_threads()
    limit = max(1, min(int(limit), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(limit)
    return limit
