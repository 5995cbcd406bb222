# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: commuting scans, adjacency construction, bitset BFS.

Every function mirrors the signature of its counterpart in ``_fallback``.
Entries are residues in ``[0, m)``; callers guarantee ``n * m * m`` fits in
int64.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy

cnp.import_array()

cdef enum:
    MSBFS_WIDTH = 64


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline bint _commute(const int64_t* a, const int64_t* b, int n, int64_t m) noexcept nogil:
    cdef int i, j, k
    cdef int64_t ab, ba
    for i in range(n):
        for j in range(n):
            ab = 0
            ba = 0
            for k in range(n):
                ab += a[i * n + k] * b[k * n + j]
                ba += b[i * n + k] * a[k * n + j]
            if (ab - ba) % m != 0:
                return False
    return True


def commute_mask(entries, x, int n, int64_t m):
    cdef const int64_t[:, ::1] e = np.ascontiguousarray(entries, dtype=np.int64).reshape(-1, n * n)
    cdef const int64_t[::1] xv = np.ascontiguousarray(x, dtype=np.int64).reshape(n * n)
    cdef Py_ssize_t rows = e.shape[0], i
    out = np.zeros(rows, dtype=np.bool_)
    cdef cnp.npy_bool[::1] o = out
    if rows == 0:
        return out
    with nogil:
        for i in range(rows):
            o[i] = _commute(&e[i, 0], &xv[0], n, m)
    return out


def scan_commuting(int n, int64_t m, fixed, int64_t lo, int64_t hi):
    cdef const int64_t[:, ::1] f = np.ascontiguousarray(fixed, dtype=np.int64).reshape(-1, n * n)
    cdef int nn = n * n, nf = f.shape[0], j, q
    cdef int64_t idx, rest
    cdef int64_t[64] digits
    cdef bint ok
    if nn > 64:
        raise ValueError("scan_commuting supports n <= 8")
    hits = []
    if hi <= lo:
        return np.empty(0, dtype=np.int64)
    rest = lo
    for j in range(nn - 1, -1, -1):
        digits[j] = rest % m
        rest //= m
    idx = lo
    while idx < hi:
        ok = True
        for q in range(nf):
            if not _commute(digits, &f[q, 0], n, m):
                ok = False
                break
        if ok:
            hits.append(idx)
        idx += 1
        j = nn - 1
        digits[j] += 1
        while digits[j] == m and j > 0:
            digits[j] = 0
            j -= 1
            digits[j] += 1
    return np.asarray(hits, dtype=np.int64)


cdef int64_t _adjacency_block(const int64_t[:, ::1] e, int n, int64_t m,
                              Py_ssize_t lo, Py_ssize_t hi, int64_t* counts,
                              int64_t** buf_out) noexcept nogil:
    cdef Py_ssize_t rows = e.shape[0], i, j
    cdef int64_t cap = 1024, used = 0, start
    cdef int64_t* buf = <int64_t*> malloc(cap * sizeof(int64_t))
    cdef int64_t* grown
    if buf == NULL:
        return -1
    for i in range(lo, hi):
        start = used
        for j in range(rows):
            if j != i and _commute(&e[i, 0], &e[j, 0], n, m):
                if used == cap:
                    cap *= 2
                    grown = <int64_t*> realloc(buf, cap * sizeof(int64_t))
                    if grown == NULL:
                        free(buf)
                        return -1
                    buf = grown
                buf[used] = j
                used += 1
        counts[i - lo] = used - start
    buf_out[0] = buf
    return used


def adjacency_rows(entries, int n, int64_t m, Py_ssize_t lo, Py_ssize_t hi):
    cdef const int64_t[:, ::1] e = np.ascontiguousarray(entries, dtype=np.int64).reshape(-1, n * n)
    counts = np.zeros(max(hi - lo, 0), dtype=np.int64)
    cdef int64_t[::1] c = counts
    cdef int64_t* buf = NULL
    cdef int64_t used
    if hi <= lo:
        return counts, np.empty(0, dtype=np.int64)
    with nogil:
        used = _adjacency_block(e, n, m, lo, hi, &c[0], &buf)
    if used < 0:
        raise MemoryError("adjacency buffer allocation failed")
    flat = np.empty(used, dtype=np.int64)
    cdef int64_t[::1] fl = flat
    if used > 0:
        memcpy(&fl[0], buf, used * sizeof(int64_t))
    free(buf)
    return counts, flat


cdef void _msbfs_batch(const int64_t[::1] indptr, const int64_t[::1] indices,
                       const int64_t* sources, int k, uint64_t* seen,
                       uint64_t* frontier, uint64_t* nxt,
                       int64_t* ecc, int64_t* reached) noexcept nogil:
    cdef Py_ssize_t nv = indptr.shape[0] - 1, v, e
    cdef int b, level = 0
    cdef uint64_t acc, fresh, word
    cdef uint64_t* tmp
    for v in range(nv):
        seen[v] = 0
        frontier[v] = 0
    for b in range(k):
        seen[sources[b]] |= (<uint64_t> 1) << b
        frontier[sources[b]] |= (<uint64_t> 1) << b
        ecc[b] = 0
        reached[b] = 0
    while True:
        fresh = 0
        for v in range(nv):
            acc = 0
            for e in range(indptr[v], indptr[v + 1]):
                acc |= frontier[indices[e]]
            acc &= ~seen[v]
            nxt[v] = acc
            fresh |= acc
        if fresh == 0:
            break
        level += 1
        for v in range(nv):
            seen[v] |= nxt[v]
        tmp = frontier
        frontier = nxt
        nxt = tmp
        for b in range(k):
            if (fresh >> b) & 1:
                ecc[b] = level
    for v in range(nv):
        word = seen[v]
        while word:
            b = __builtin_ctzll(word)
            reached[b] += 1
            word &= word - 1


def msbfs(indptr, indices, sources):
    cdef const int64_t[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int64_t[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    src_arr = np.ascontiguousarray(sources, dtype=np.int64)
    cdef const int64_t[::1] src = src_arr
    cdef Py_ssize_t ns = src.shape[0], nv = ip.shape[0] - 1, off
    ecc = np.zeros(ns, dtype=np.int64)
    reached = np.zeros(ns, dtype=np.int64)
    cdef int64_t[::1] ec = ecc
    cdef int64_t[::1] rc = reached
    if ns == 0 or nv == 0:
        return ecc, reached
    cdef uint64_t* work = <uint64_t*> malloc(3 * nv * sizeof(uint64_t))
    if work == NULL:
        raise MemoryError("msbfs work buffers")
    cdef int k
    with nogil:
        off = 0
        while off < ns:
            k = MSBFS_WIDTH if ns - off > MSBFS_WIDTH else <int> (ns - off)
            _msbfs_batch(ip, ix, &src[off], k, work, work + nv, work + 2 * nv,
                         &ec[off], &rc[off])
            off += k
    free(work)
    return ecc, reached
