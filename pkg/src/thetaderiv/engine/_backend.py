"""Pick the compiled kernel when importable, else the pure-Python one.

Set ``THETADERIV_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

BACKEND = "python"

if os.environ.get("THETADERIV_PURE_PYTHON", "") not in ("", "0"):
    from ._pykernel import max_term, theta_sum
else:
    try:
        from ._ckernel import max_term, theta_sum

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        from ._pykernel import max_term, theta_sum

__all__ = ["BACKEND", "max_term", "theta_sum"]
