"""Kernel backend selection.

Two interchangeable kernels solve the retrograde labeling: a compiled
extension and the pure-Python reference. PURSUIT_BACKEND picks one
(auto | python | compiled); auto prefers the compiled kernel and falls
back silently. Both produce bit-identical labels and times.
"""

from __future__ import annotations

import os

from ..errors import PursuitError
from . import _reference

try:  # built by setup.py; absence is a supported configuration
    from . import _ckernel
except ImportError:  # pragma: no cover - depends on build environment
    _ckernel = None


def compiled_available() -> bool:
    return _ckernel is not None


def resolve_backend(name: str | None = None) -> tuple[str, object]:
    """Map a requested backend name to (name, kernel module)."""
    if name is None:
        name = os.environ.get("PURSUIT_BACKEND", "auto")
    if name == "auto":
        return ("compiled", _ckernel) if _ckernel is not None else ("python", _reference)
    if name == "python":
        return "python", _reference
    if name == "compiled":
        if _ckernel is None:
            raise PursuitError(
                "compiled backend requested but the extension is not built; "
                "reinstall the package or set PURSUIT_BACKEND=python")
        return "compiled", _ckernel
    raise PursuitError(f"unknown backend {name!r}; expected auto, python or compiled")
