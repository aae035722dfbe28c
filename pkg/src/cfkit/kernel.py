"""Backend selection for the big-integer recurrence kernel.

The compiled GMP extension is used when it was built; otherwise the
pure-Python module is used.  Setting CFKIT_PURE_PYTHON=1 forces the
fallback.
"""
import os

from . import _kernel_py

if os.environ.get("CFKIT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl
    except ImportError:
        _impl = _kernel_py

BACKEND = _impl.BACKEND
advance = _impl.advance
trajectory = _impl.trajectory

__all__ = ["BACKEND", "advance", "trajectory"]
