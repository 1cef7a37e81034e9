"""Backend selection for the hot loops.

The compiled Cython module is used when it imports; otherwise the
pure-Python twin is used.  Set ``RIGIDBALL_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _kernels_py

if os.environ.get("RIGIDBALL_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

shoot = _impl.shoot
shoot_profile = _impl.shoot_profile
relax = _impl.relax

__all__ = ["BACKEND", "shoot", "shoot_profile", "relax"]
