"""Hot loops, compiled when possible.

The Cython build of :func:`rk4_outward` is used when importable; otherwise
the pure-Python twin is. Set ``HULTHEN_PURE_PYTHON=1`` to force the fallback.
``BACKEND`` names the implementation in use.
"""
import os

from . import _rk4_py

if os.environ.get("HULTHEN_PURE_PYTHON"):
    rk4_outward = _rk4_py.rk4_outward
    BACKEND = "python"
else:
    try:
        from ._rk4_ext import rk4_outward
        BACKEND = "cython"
    except ImportError:
        rk4_outward = _rk4_py.rk4_outward
        BACKEND = "python"


def available_backends():
    out = {"python": _rk4_py.rk4_outward}
    try:
        from ._rk4_ext import rk4_outward as ext
    except ImportError:
        pass
    else:
        out["cython"] = ext
    return out


__all__ = ["rk4_outward", "BACKEND", "available_backends"]
