"""Vectorised helpers over arrays of encoded matrices.

A batch is an ``(N, n*n)`` int64 array of row-major residues, the same layout
the kernels consume.
"""
from itertools import permutations

import numpy as np


def decode_batch(indices, n, m):
    """Base-``m`` digits of each index, most significant digit first."""
    idx = np.array(indices, dtype=np.int64, copy=True)
    out = np.empty((idx.shape[0], n * n), dtype=np.int64)
    for j in range(n * n - 1, -1, -1):
        out[:, j] = idx % m
        idx //= m
    return out


def encode_batch(entries, m):
    entries = np.asarray(entries, dtype=np.int64)
    out = np.zeros(entries.shape[0], dtype=np.int64)
    for j in range(entries.shape[1]):
        out = out * m + entries[:, j]
    return out


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_batch(entries, n, m):
    """Determinant mod ``m`` of every matrix in the batch."""
    e = np.asarray(entries, dtype=np.int64)
    if n == 1:
        return e[:, 0] % m
    if n == 2:
        return (e[:, 0] * e[:, 3] - e[:, 1] * e[:, 2]) % m
    total = np.zeros(e.shape[0], dtype=np.int64)
    for perm in permutations(range(n)):
        term = np.ones(e.shape[0], dtype=np.int64)
        for i, j in enumerate(perm):
            term = (term * e[:, i * n + j]) % m
        total = (total + _perm_sign(perm) * term) % m
    return total


def unit_mask(values, m):
    return np.gcd(np.asarray(values, dtype=np.int64), m) == 1


def commute_mask(entries, x, n, m):
    """Boolean mask of rows of ``entries`` that commute with the matrix ``x``."""
    ys = np.asarray(entries, dtype=np.int64).reshape(-1, n, n)
    a = np.asarray(x, dtype=np.int64).reshape(n, n)
    diff = (ys @ a - a @ ys) % m
    return ~diff.reshape(ys.shape[0], -1).any(axis=1)
