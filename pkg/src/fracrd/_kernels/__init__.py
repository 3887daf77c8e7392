"""Hot elementwise kernels with a compiled backend and a numpy fallback.

The Cython extension is used when it was built; otherwise, or when the
environment variable ``FRACRD_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the numpy implementation is selected. ``backend`` is the module in
use and ``BACKEND`` its name.
"""
import importlib
import os

from . import _numpy

__all__ = ["backend", "BACKEND", "available_backends", "get_backend"]


def _load(name):
    if name == "numpy":
        return _numpy
    if name == "cython":
        return importlib.import_module(f"{__name__}._cython")
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends():
    names = ["numpy"]
    try:
        _load("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


def get_backend(name=None):
    """Return the kernel module ``name`` (``"cython"`` or ``"numpy"``), or the default."""
    if name is None:
        return backend
    return _load(name)


def _select():
    forced = os.environ.get("FRACRD_PURE_PYTHON", "")
    if forced and forced != "0":
        return _numpy
    try:
        return _load("cython")
    except ImportError:
        return _numpy


backend = _select()
BACKEND = backend.NAME
