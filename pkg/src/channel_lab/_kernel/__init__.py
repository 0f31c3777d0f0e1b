"""Kernel backend selection.

Prefers the compiled Cython core and silently falls back to the numpy
reference implementation when the extension is not built. Set
CHANNEL_LAB_BACKEND=python (or =compiled) to force a backend; forcing the
compiled one raises if it is unavailable.
"""

import os

_requested = os.environ.get("CHANNEL_LAB_BACKEND", "").strip().lower()

if _requested == "python":
    from . import pyref as _impl
elif _requested in ("", "compiled"):
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "CHANNEL_LAB_BACKEND=compiled but the extension is not built; "
                "reinstall with a working C compiler and Cython"
            )
        from . import pyref as _impl
else:
    raise ValueError(
        f"unknown CHANNEL_LAB_BACKEND value {_requested!r}; "
        "use 'compiled' or 'python'"
    )

backend_name = _impl.BACKEND
eigh = _impl.eigh
eigvalsh = _impl.eigvalsh
output_entropy_pure = _impl.output_entropy_pure
ensemble_output_entropy = _impl.ensemble_output_entropy
givens_isometry = _impl.givens_isometry
isometry_param_count = _impl.isometry_param_count

__all__ = [
    "backend_name",
    "eigh",
    "eigvalsh",
    "output_entropy_pure",
    "ensemble_output_entropy",
    "givens_isometry",
    "isometry_param_count",
]
