"""Kernel selection: the compiled extension when importable, else the numpy reference.

Set ADELIC_CODES_PURE_PYTHON=1 to force the reference implementation.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("ADELIC_CODES_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # pragma: no cover - depends on the build
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

rref = _impl.rref
min_weight = _impl.min_weight
