# Numba is optional; QCORR_NO_NUMBA=1 forces the pure-numpy kernels.

import logging
import os

logger = logging.getLogger(__name__)

DISABLED = os.environ.get("QCORR_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")

# the bundled TBB is too old for numba; avoid the startup warning
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    if DISABLED:
        raise ImportError("disabled by QCORR_NO_NUMBA")
    import numba

    njit = numba.njit
    prange = numba.prange
    HAVE_NUMBA = True
except ImportError as exc:
    logger.debug("numba unavailable (%s); using numpy kernels", exc)
    HAVE_NUMBA = False

    def njit(pyfunc=None, **kwargs):
        def wrap(func):
            return func

        return wrap if pyfunc is None else wrap(pyfunc)

    def prange(*args):
        return range(*args)
