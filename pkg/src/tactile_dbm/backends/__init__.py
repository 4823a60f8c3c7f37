"""Kernel backend selection.

Two interchangeable implementations of the hot sampling kernels exist: a
compiled Cython extension (``_core``) and a pure numpy fallback
(``python``). The compiled one is preferred when importable; the
environment variable TACTILE_DBM_BACKEND ("cython" or "python") forces a
choice. Everything above this layer is backend-agnostic.
"""

import os

from . import python as _python_backend

try:
    from . import _core as _cython_backend
except ImportError:
    _cython_backend = None

_BACKENDS = {"python": _python_backend}
if _cython_backend is not None:
    _BACKENDS["cython"] = _cython_backend


def available_backends():
    """Names of importable backends, fallback first."""
    return tuple(_BACKENDS)


def get_backend(name):
    if name not in _BACKENDS:
        raise ValueError(
            f"backend {name!r} not available (have: {', '.join(_BACKENDS)})"
        )
    return _BACKENDS[name]


def _select_default():
    forced = os.environ.get("TACTILE_DBM_BACKEND")
    if forced:
        return get_backend(forced)
    return _BACKENDS.get("cython", _python_backend)


kernels = _select_default()
