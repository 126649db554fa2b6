"""Kernel backend selection.

``FRACSCHRO_NUMBA=0`` forces the pure-numpy kernels; otherwise the numba
kernels are used when numba imports cleanly.  ``FRACSCHRO_THREADS`` caps the
numba thread pool.
"""
import logging
import os

logger = logging.getLogger(__name__)

_FALSY = {"0", "false", "no", "off"}


def _want_numba():
    return os.environ.get("FRACSCHRO_NUMBA", "1").strip().lower() not in _FALSY


def apply_thread_limit(value=None):
    """Cap the numba thread pool from ``value`` or ``FRACSCHRO_THREADS``."""
    raw = value if value is not None else os.environ.get("FRACSCHRO_THREADS")
    if raw is None or not USING_NUMBA:
        return
    try:
        n = int(raw)
    except ValueError:
        logger.warning("ignoring FRACSCHRO_THREADS=%r (not an integer)", raw)
        return
    import numba

    n = max(1, min(n, numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)


USING_NUMBA = False
if _want_numba():
    try:
        import numba

        # the bundled TBB is too old; skip it instead of warning on first use
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
        from . import _kernels_numba as kernels

        USING_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        logger.info("numba unavailable, using numpy kernels")
        from . import _kernels_numpy as kernels
else:
    from . import _kernels_numpy as kernels

apply_thread_limit()

BACKEND = "numba" if USING_NUMBA else "numpy"

__all__ = ["kernels", "BACKEND", "USING_NUMBA", "apply_thread_limit"]
