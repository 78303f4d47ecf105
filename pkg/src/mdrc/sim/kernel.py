"""Selects the compiled recursion when it is built, the pure-Python one otherwise.

Set ``MDRC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernel_py

if os.environ.get("MDRC_PURE_PYTHON", "") not in ("", "0"):
    run_closed_loop = _kernel_py.run_closed_loop
    BACKEND = "python"
else:
    try:
        from ._kernel import run_closed_loop
        BACKEND = "cython"
    except ImportError:
        run_closed_loop = _kernel_py.run_closed_loop
        BACKEND = "python"

__all__ = ["run_closed_loop", "BACKEND"]
