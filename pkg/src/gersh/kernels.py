"""Kernel backend selection.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python implementation in ``_purepy`` is used. Setting the environment
variable ``GERSH_PURE_PYTHON=1`` forces the fallback.
"""
import os

import numpy as np

from . import _purepy

try:
    if os.environ.get("GERSH_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from . import _speedups as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _purepy
    BACKEND = "python"


def available_backends():
    """Map backend name -> kernel module, for tests and benchmarks."""
    out = {"python": _purepy}
    try:
        from . import _speedups

        out["cython"] = _speedups
    except ImportError:
        pass
    return out


def weiszfeld_iterate(px, py, x, y, tol, max_iter, anchor_eps, impl=None):
    impl = impl or _impl
    return impl.weiszfeld_iterate(
        np.ascontiguousarray(px, dtype=np.float64),
        np.ascontiguousarray(py, dtype=np.float64),
        float(x), float(y), float(tol), int(max_iter), float(anchor_eps),
    )


def shifted_margins(a, lam, c, e, impl=None):
    """Row dominance margins of ``a - lam*I - c_i - e_j`` (complex inputs)."""
    impl = impl or _impl
    a = np.asarray(a, dtype=np.complex128)
    c = np.asarray(c, dtype=np.complex128)
    e = np.asarray(e, dtype=np.complex128)
    lam = complex(lam)
    return np.asarray(impl.shifted_margins(
        np.ascontiguousarray(a.real), np.ascontiguousarray(a.imag),
        lam.real, lam.imag,
        np.ascontiguousarray(c.real), np.ascontiguousarray(c.imag),
        np.ascontiguousarray(e.real), np.ascontiguousarray(e.imag),
    ), dtype=np.float64)
