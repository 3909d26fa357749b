"""Backend selection for the row reduction kernel.

The compiled extension is used when it was built; setting the environment
variable ``FGAB_PURE_PYTHON=1`` forces the pure-Python kernel.
"""
import os

from . import _kernel_py

BACKENDS = {"python": _kernel_py.hnf_rows}

try:
    from . import _kernel as _kernel_c
except ImportError:  # extension not built
    _kernel_c = None
else:
    BACKENDS["cython"] = _kernel_c.hnf_rows

if _kernel_c is not None and os.environ.get("FGAB_PURE_PYTHON", "") in ("", "0"):
    BACKEND = "cython"
else:
    BACKEND = "python"

hnf_rows = BACKENDS[BACKEND]
