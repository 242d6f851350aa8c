"""Backend selection for the compiled kernels.

Set ``CAYLEY_DISABLE_NUMBA=1`` before import to force the pure-numpy path.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}


def numba_requested() -> bool:
    return os.environ.get("CAYLEY_DISABLE_NUMBA", "").strip().lower() in _FALSY


try:
    if not numba_requested():
        raise ImportError("numba disabled by CAYLEY_DISABLE_NUMBA")
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if HAVE_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(fn):
        return fn

    return wrap
