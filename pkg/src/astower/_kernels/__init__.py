"""Series kernels: the compiled extension when importable, else pure Python.

Set ``ASTOWER_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("ASTOWER_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python kernels requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = _ckernels.BACKEND if _ckernels is not None else _pykernels.BACKEND


def make_kernel(s, modulus, exp=None, log=None, backend=None):
    """Build a kernel for GF(2^s); fields beyond the compiled range use Python."""
    backend = backend or BACKEND
    if backend == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        if s <= _ckernels.MAX_DEGREE:
            return _ckernels.FieldKernel(s, modulus, exp, log)
    return _pykernels.FieldKernel(s, modulus, exp, log)


def available_backends():
    return ["python"] + (["cython"] if _ckernels is not None else [])
