"""Backend selection for the cube-enumeration hot kernel.

The compiled extension is used when importable; set ``ODDKH_PURE=1`` to force
the pure-Python twin (the test suite and the benchmark use this to compare
the two implementations).
"""

import os

if os.environ.get("ODDKH_PURE"):
    from . import pure as _impl
else:
    try:
        from . import fastcube as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built; fall back silently
        from . import pure as _impl

BACKEND = _impl.BACKEND
circle_counts_all = _impl.circle_counts_all

__all__ = ["BACKEND", "circle_counts_all"]
