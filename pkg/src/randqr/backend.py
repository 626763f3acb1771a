"""Kernel backend selection.

The inner loops (Householder sweeps, Jacobi rotations) exist twice: a
numba-jitted module and a pure-numpy twin with identical semantics.  The
active backend is chosen once, from the RANDQR_BACKEND environment variable:

  auto   use numba if it imports, else numpy (default)
  numba  require numba, fail loudly if unavailable
  numpy  force the pure-numpy path

Both backends produce valid factorizations and agree to rounding error,
but not bitwise; determinism guarantees hold per backend.
"""

import os

_ACTIVE = None
_NAME = None


def _load(choice):
    if choice == "numpy":
        from . import _kernels_numpy as mod

        return mod, "numpy"
    if choice == "numba":
        from . import _kernels_numba as mod

        return mod, "numba"
    if choice == "auto":
        try:
            from . import _kernels_numba as mod

            return mod, "numba"
        except ImportError:
            from . import _kernels_numpy as mod

            return mod, "numpy"
    raise ValueError(f"RANDQR_BACKEND must be auto, numba or numpy, not {choice!r}")


def get_kernels():
    global _ACTIVE, _NAME
    if _ACTIVE is None:
        choice = os.environ.get("RANDQR_BACKEND", "auto").strip().lower() or "auto"
        _ACTIVE, _NAME = _load(choice)
    return _ACTIVE


def backend_name():
    get_kernels()
    return _NAME


def set_backend(choice):
    """Force a backend (used by tests and the backend benchmark)."""
    global _ACTIVE, _NAME
    _ACTIVE, _NAME = _load(choice)
