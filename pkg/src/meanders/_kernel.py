"""Kernel backend selection.

Imports the compiled ``_core`` extension when present, otherwise the
pure-Python mirror ``_core_py``.  Set MEANDER_BACKEND=python to force the
fallback (useful for benchmarking and differential testing), or
MEANDER_BACKEND=cython to fail loudly if the extension is missing.
"""

import os

_requested = os.environ.get("MEANDER_BACKEND", "").strip().lower()

if _requested == "python":
    from . import _core_py as _impl
elif _requested == "cython":
    from . import _core as _impl  # type: ignore[attr-defined]
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _core_py as _impl

BACKEND = _impl.BACKEND_NAME
count_for_alpha = _impl.count_for_alpha
loop_table = _impl.loop_table

# Pair emission is only needed at small sizes; it always uses the Python
# generator so consumers can stream without extension-specific glue.
from ._core_py import iter_irreducible_for_alpha  # noqa: E402,F401


def backend_name() -> str:
    return BACKEND
