"""Backend selection for the hot numeric kernels.

The jit-compiled kernels in :mod:`vdwdim.kernels` are used by default.  Set
the environment variable ``VDW_DISABLE_NUMBA=1`` before import to force the
pure-numpy fallbacks instead (useful for debugging, and for timing the two
paths against each other with ``benchmarks/bench_kernels.py``).  If numba is
not installed the fallbacks are selected automatically.
"""

import os

NUMBA_DISABLED = os.environ.get("VDW_DISABLE_NUMBA", "0") == "1"

try:
    if NUMBA_DISABLED:
        raise ImportError("numba disabled via VDW_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False
    njit = None


def backend_name() -> str:
    """Name of the kernel backend selected at import time."""
    return "numba" if HAVE_NUMBA else "numpy"
