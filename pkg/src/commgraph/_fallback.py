"""Pure numpy implementations of the hot kernels.

Signatures and results match ``_kernels.pyx`` exactly; the kernel test suite
runs both and compares.
"""
import numpy as np

from .batch import commute_mask as _commute_mask
from .batch import decode_batch

SCAN_CHUNK = 1 << 18
MSBFS_WIDTH = 64


def commute_mask(entries, x, n, m):
    return _commute_mask(entries, x, n, m)


def scan_commuting(n, m, fixed, lo, hi):
    """Indices in ``[lo, hi)`` whose matrices commute with every row of ``fixed``."""
    fixed = np.asarray(fixed, dtype=np.int64).reshape(-1, n * n)
    hits = []
    for start in range(lo, hi, SCAN_CHUNK):
        idx = np.arange(start, min(start + SCAN_CHUNK, hi), dtype=np.int64)
        batch = decode_batch(idx, n, m)
        keep = np.ones(idx.shape[0], dtype=bool)
        for f in fixed:
            sel = np.flatnonzero(keep)
            keep[sel] = _commute_mask(batch[sel], f, n, m)
        hits.append(idx[keep])
    if not hits:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(hits)


def adjacency_rows(entries, n, m, lo, hi):
    """Neighbour lists of rows ``lo..hi-1``: per-row counts and the flat list."""
    entries = np.ascontiguousarray(entries, dtype=np.int64)
    counts = np.zeros(hi - lo, dtype=np.int64)
    parts = []
    for i in range(lo, hi):
        mask = _commute_mask(entries, entries[i], n, m)
        mask[i] = False
        nbrs = np.flatnonzero(mask).astype(np.int64)
        counts[i - lo] = nbrs.shape[0]
        parts.append(nbrs)
    flat = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
    return counts, flat


def _msbfs_batch(indptr, indices, sources, has_edges, starts):
    nv = indptr.shape[0] - 1
    k = sources.shape[0]
    bits = np.left_shift(np.uint64(1), np.arange(k, dtype=np.uint64))
    seen = np.zeros(nv, dtype=np.uint64)
    np.bitwise_or.at(seen, sources, bits)
    frontier = seen.copy()
    ecc = np.zeros(k, dtype=np.int64)
    level = 0
    while True:
        acc = np.zeros(nv, dtype=np.uint64)
        if starts.shape[0]:
            acc[has_edges] = np.bitwise_or.reduceat(frontier[indices], starts)
        new = acc & ~seen
        fresh = int(np.bitwise_or.reduce(new))
        if fresh == 0:
            break
        level += 1
        seen |= new
        frontier = new
        for b in range(k):
            if fresh >> b & 1:
                ecc[b] = level
    per_bit = np.unpackbits(seen.view(np.uint8).reshape(nv, 8), axis=1, bitorder="little")
    reached = per_bit[:, :k].sum(axis=0, dtype=np.int64)
    return ecc, reached


def msbfs(indptr, indices, sources):
    """Eccentricity and reached-vertex count of each source, 64 sources per pass."""
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    sources = np.asarray(sources, dtype=np.int64)
    has_edges = np.diff(indptr) > 0
    starts = indptr[:-1][has_edges]
    ecc = np.zeros(sources.shape[0], dtype=np.int64)
    reached = np.zeros(sources.shape[0], dtype=np.int64)
    for off in range(0, sources.shape[0], MSBFS_WIDTH):
        chunk = sources[off:off + MSBFS_WIDTH]
        e, r = _msbfs_batch(indptr, indices, chunk, has_edges, starts)
        ecc[off:off + chunk.shape[0]] = e
        reached[off:off + chunk.shape[0]] = r
    return ecc, reached
