"""Backend selection for the hot kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy implementations in ``_fallback`` are used. Setting ``COMMGRAPH_PURE=1``
forces the fallback.
"""
import os

from . import _fallback

try:
    if os.environ.get("COMMGRAPH_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _fallback
    BACKEND = "python"


def backend(name=None):
    """Return the kernel module for ``name`` ("cython" / "python"), default the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _fallback
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")


def _check_range(n, m):
    if n * m * m >= 1 << 62:
        raise OverflowError(f"modulus {m} too large for int64 kernels at n={n}")


def commute_mask(entries, x, n, m):
    _check_range(n, m)
    return _impl.commute_mask(entries, x, n, m)


def scan_commuting(n, m, fixed, lo, hi):
    _check_range(n, m)
    return _impl.scan_commuting(n, m, fixed, lo, hi)


def adjacency_rows(entries, n, m, lo, hi):
    _check_range(n, m)
    return _impl.adjacency_rows(entries, n, m, lo, hi)


def msbfs(indptr, indices, sources):
    return _impl.msbfs(indptr, indices, sources)
