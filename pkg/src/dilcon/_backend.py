"""Kernel backend selection, resolved once at import.

The compiled extension ``dilcon._kernels`` is preferred; the pure
NumPy/Python module ``dilcon._kernels_py`` implements the same contracts
and is used when the extension is absent.  ``DILCON_BACKEND`` forces the
choice: ``c`` (fail if not built), ``py``, or ``auto`` (default).
"""

import os

_choice = os.environ.get("DILCON_BACKEND", "auto").strip().lower()

if _choice in ("", "auto"):
    try:
        from . import _kernels as kernels

        BACKEND = "c"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "py"
elif _choice == "c":
    from . import _kernels as kernels

    BACKEND = "c"
elif _choice in ("py", "python"):
    from . import _kernels_py as kernels

    BACKEND = "py"
else:
    raise ImportError(
        f"DILCON_BACKEND={_choice!r} not understood (use 'auto', 'c' or 'py')"
    )


def backend_name() -> str:
    """Name of the active kernel backend: 'c' (compiled) or 'py'."""
    return BACKEND
