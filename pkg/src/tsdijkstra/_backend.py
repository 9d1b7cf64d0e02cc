"""Pick the compiled Dijkstra kernel or the pure-Python loop.

The choice is made once at import: the Cython extension is used when it
was built, unless ``SSSP_BACKEND=python``.  ``SSSP_BACKEND=compiled`` makes
a missing extension an import error instead of a silent fallback.
"""
from __future__ import annotations

import logging
import os

from .errors import UsageError

log = logging.getLogger("tsdijkstra")

try:
    from . import _kernel
except ImportError as exc:  # extension not built
    _kernel = None
    _import_error: ImportError | None = exc
else:
    _import_error = None

_requested = os.environ.get("SSSP_BACKEND", "auto").lower()
if _requested not in ("auto", "python", "compiled"):
    raise ImportError(f"SSSP_BACKEND must be auto, python or compiled, not {_requested!r}")
if _requested == "compiled" and _kernel is None:
    raise ImportError(f"SSSP_BACKEND=compiled but the extension is unavailable: {_import_error}")

DEFAULT = "python" if _kernel is None or _requested == "python" else "compiled"
log.debug("dijkstra backend: %s", DEFAULT)


def available() -> tuple[str, ...]:
    return ("python", "compiled") if _kernel is not None else ("python",)


def resolve(backend: str | None):
    """Return the kernel module for ``backend`` or ``None`` for pure Python."""
    name = DEFAULT if backend is None else backend
    if name == "python":
        return None
    if name == "compiled":
        if _kernel is None:
            raise UsageError(f"compiled backend unavailable: {_import_error}")
        return _kernel
    raise UsageError(f"unknown backend {name!r}")
