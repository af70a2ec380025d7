"""Kernel backend selection.

The numeric kernels in :mod:`twinfo.kernels` are written in plain numpy and
compiled with numba's ``@njit`` when available.  The environment variable
``TWINFO_NUMBA`` picks the path:

* unset or ``1``/``on`` -- compile with numba (silently falls back to numpy
  when unset and numba is not importable);
* ``0``/``off`` -- run the same functions as uncompiled numpy code.
"""

import os

_TRUTHY = ("1", "true", "on", "yes")
_FALSY = ("0", "false", "off", "no")


def _resolve():
    flag = os.environ.get("TWINFO_NUMBA", "").strip().lower()
    if flag in _FALSY:
        return (lambda f: f), "numpy"
    try:
        import numba
    except ImportError:
        if flag in _TRUTHY:
            raise
        return (lambda f: f), "numpy"
    return numba.njit(cache=True), "numba"


jit, BACKEND = _resolve()
