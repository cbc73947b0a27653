"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when
``SEMSIM_PURE_PYTHON`` is set to a non-empty value, the numpy fallback
is used.  ``BACKEND`` names the active one.
"""

import os

from . import _kernels_py

if os.environ.get("SEMSIM_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

jacobi_sweep = _impl.jacobi_sweep
csr_matmat = _impl.csr_matmat


def get_backend(name):
    """Return the kernel module for ``name`` ("cython" or "python")."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels  # type: ignore[attr-defined]

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")
