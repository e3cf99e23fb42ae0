"""Kernel backend selection.

Hot loops ship twice: a numba-compiled loop kernel and a vectorised numpy
twin. ``SWARM_ARENA_NUMBA=0`` (or a missing numba install) selects the numpy
path at import time; :func:`set_backend` switches at runtime.
"""
import os
import warnings

try:
    import numba
except ImportError:  # pragma: no cover - numba is optional
    numba = None

_FALSY = {"0", "false", "no", "off"}

HAS_NUMBA = numba is not None
_backend = "numba" if HAS_NUMBA and os.environ.get("SWARM_ARENA_NUMBA", "1").strip().lower() not in _FALSY else "numpy"


def njit(fn):
    """Compile ``fn`` with numba when available; otherwise return it untouched."""
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


def get_backend():
    return _backend


def set_backend(name):
    """Select ``"numba"`` or ``"numpy"`` kernels for subsequent calls."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAS_NUMBA:
        warnings.warn("numba is not installed; staying on the numpy backend")
        return
    _backend = name


class KernelPair:
    """A numba kernel and its numpy twin; calls dispatch on the active backend."""

    __slots__ = ("numba", "numpy", "__name__")

    def __init__(self, loop_fn, numpy_fn):
        self.numba = njit(loop_fn) if HAS_NUMBA else numpy_fn
        self.numpy = numpy_fn
        self.__name__ = numpy_fn.__name__

    def __call__(self, *args):
        if _backend == "numba":
            return self.numba(*args)
        return self.numpy(*args)
