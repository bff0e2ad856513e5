"""Kernel backend selection.

The hot inner loops (sampling, integrand evaluation, chain solves) live in
``dixie.kernels`` and are compiled with numba by default.  Setting the
environment variable ``DIXIE_BACKEND=numpy`` skips compilation and runs the
very same functions as plain Python/numpy; results are bit-identical, only
slower.  ``DIXIE_THREADS`` caps the numba thread pool and never changes
numeric output (per-trial streams are independent of scheduling).
"""

import os

BACKEND = os.environ.get("DIXIE_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise RuntimeError(
        f"DIXIE_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}"
    )

USING_NUMBA = BACKEND == "numba"

if USING_NUMBA:
    import numba
    from numba import prange

    _threads = os.environ.get("DIXIE_THREADS")
    if _threads:
        n = max(1, min(int(_threads), numba.config.NUMBA_NUM_THREADS))
        numba.set_num_threads(n)

    def kernel(parallel=False):
        def wrap(fn):
            return numba.njit(cache=True, parallel=parallel)(fn)
        return wrap
else:
    prange = range

    def kernel(parallel=False):
        def wrap(fn):
            return fn
        return wrap
