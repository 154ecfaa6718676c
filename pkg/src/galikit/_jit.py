"""Optional numba acceleration.

Kernels in :mod:`galikit._kernels` are decorated with :func:`njit`.  When numba
is importable and ``GALIKIT_DISABLE_JIT`` is unset (or ``0``), they compile to
machine code on first call.  Otherwise the decorator is a no-op and the same
source runs as ordinary numpy code.  The flag is read once, at import time.
"""
import os

_FLAG = os.environ.get("GALIKIT_DISABLE_JIT", "0").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None

JIT_ENABLED = numba is not None and _FLAG in ("", "0", "false", "no")


def njit(fn):
    """Compile ``fn`` with ``numba.njit(cache=True)`` when JIT is enabled."""
    if JIT_ENABLED:
        return numba.njit(cache=True)(fn)
    return fn


def pure(fn):
    """Return the uncompiled Python function behind a kernel."""
    return getattr(fn, "py_func", fn)
