"""Shared fixtures and brute-force oracles.

The oracles below use only itertools, plain integer arithmetic and networkx,
never the package's own enumeration or kernels.
"""
from itertools import permutations, product
from math import gcd

import networkx as nx
import pytest

from commgraph import kernels

BACKENDS = ["python"]
try:
    kernels.backend("cython")
    BACKENDS.append("cython")
except ImportError:
    pass

ACCEPTANCE_LINES = []


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run a test once per available kernel backend."""
    monkeypatch.setattr(kernels, "_impl", kernels.backend(request.param))
    return request.param


def oracle_mul(a, b, n, m):
    return tuple(sum(a[i * n + k] * b[k * n + j] for k in range(n)) % m
                 for i in range(n) for j in range(n))


def oracle_det(a, n):
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inversions
        for i in range(n):
            term *= a[i * n + perm[i]]
        total += term
    return total


def oracle_members(kind, n, m):
    for entries in product(range(m), repeat=n * n):
        if kind == "m":
            yield entries
        elif kind == "gl" and gcd(oracle_det(entries, n) % m, m) == 1:
            yield entries
        elif kind == "sl" and oracle_det(entries, n) % m == 1 % m:
            yield entries


def oracle_graph(kind, n, m):
    """Commuting graph as a networkx Graph on encoded indices."""
    members = list(oracle_members(kind, n, m))
    center = [a for a in members
              if all(oracle_mul(a, b, n, m) == oracle_mul(b, a, n, m) for b in members)]
    cset = set(center)
    verts = [a for a in members if a not in cset]

    def enc(a):
        idx = 0
        for e in a:
            idx = idx * m + e
        return idx

    g = nx.Graph()
    g.add_nodes_from(enc(a) for a in verts)
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            if oracle_mul(a, b, n, m) == oracle_mul(b, a, n, m):
                g.add_edge(enc(a), enc(b))
    return g, {enc(c) for c in center}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
