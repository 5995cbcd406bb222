"""Commuting graphs over enumerated domains.

A :class:`GraphView` holds the sorted vertex list and nothing else: neighbour
queries recompute commutation. Whole-graph passes (``diameter``, exports)
build a transient CSR adjacency and hand it to the kernels.
"""
from __future__ import annotations

import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import GuardExceeded, NotAVertex, PreconditionError
from .zmod import (DEFAULT_SCAN_LIMIT, ModMatrix, center_indices, decode,
                   domain_order, encode, enumerate_domain, to_text)

DEFAULT_GUARD = 1 << 20
DEFAULT_EXPORT_GUARD = 1 << 14
INF = math.inf


def default_guard():
    env = os.environ.get("COMMGRAPH_GUARD")
    return int(env) if env else DEFAULT_GUARD


def default_threads():
    return os.cpu_count() or 1


@dataclass(frozen=True, eq=False)
class GraphView:
    domain: object
    vertices: np.ndarray
    entries: np.ndarray
    center: frozenset
    guard: int

    def __len__(self):
        return int(self.vertices.shape[0])

    def position(self, x):
        """Row position of a vertex given as a ModMatrix or an encoded index."""
        idx = encode(x) if isinstance(x, ModMatrix) else int(x)
        pos = int(np.searchsorted(self.vertices, idx))
        if pos >= len(self) or self.vertices[pos] != idx:
            raise NotAVertex(f"{idx} is not a vertex of the commuting graph of {self.domain}")
        return pos

    def matrix(self, pos):
        return decode(int(self.vertices[pos]), self.domain.n, self.domain.m)


@dataclass(frozen=True)
class ComponentReport:
    component_count: int
    component_sizes: list
    representatives: list
    labels: np.ndarray

    def label_of(self, g, x):
        return int(self.labels[g.position(x)])


def build_graph(domain, guard=None):
    """Enumerate the non-central members of ``domain``."""
    guard = default_guard() if guard is None else guard
    if domain.n < 2:
        raise PreconditionError("n = 1 has no non-central elements")
    order = domain_order(domain)
    # the center has at most m elements, so this bound is safe to reject on
    if order - domain.m > guard:
        raise GuardExceeded(f"vertices of the commuting graph of {domain}", order, guard)
    idx, entries = enumerate_domain(domain, max(DEFAULT_SCAN_LIMIT, guard))
    central = center_indices(entries, domain.n, domain.m)
    keep = np.ones(idx.shape[0], dtype=bool)
    keep[central] = False
    vertices, rows = idx[keep], entries[keep]
    if vertices.shape[0] > guard:
        raise GuardExceeded(f"vertices of the commuting graph of {domain}", int(vertices.shape[0]), guard)
    vertices.setflags(write=False)
    rows.setflags(write=False)
    return GraphView(domain, vertices, rows, frozenset(int(i) for i in idx[central]), guard)


def neighbors(g, x, chunk=4096):
    """Encoded indices of the vertices adjacent to ``x``, ascending, computed lazily."""
    pos = g.position(x)
    row = g.entries[pos]
    n, m = g.domain.n, g.domain.m
    for start in range(0, len(g), chunk):
        mask = kernels.commute_mask(g.entries[start:start + chunk], row, n, m)
        if start <= pos < start + chunk:
            mask[pos - start] = False
        for i in np.flatnonzero(mask):
            yield int(g.vertices[start + i])


def _expand(g, frontier, unvisited):
    # positions among `unvisited` adjacent to at least one frontier vertex
    n, m = g.domain.n, g.domain.m
    cand = np.flatnonzero(unvisited)
    hit = np.zeros(cand.shape[0], dtype=bool)
    for v in frontier:
        todo = np.flatnonzero(~hit)
        if todo.shape[0] == 0:
            break
        hit[todo] = kernels.commute_mask(g.entries[cand[todo]], g.entries[v], n, m)
    return cand[hit]


def bfs_distance(g, x, y):
    """Shortest-path length between two vertices; ``math.inf`` if disconnected."""
    src, dst = g.position(x), g.position(y)
    if src == dst:
        return 0
    unvisited = np.ones(len(g), dtype=bool)
    unvisited[src] = False
    frontier = [src]
    level = 0
    while frontier:
        level += 1
        new = _expand(g, frontier, unvisited)
        unvisited[new] = False
        if not unvisited[dst]:
            return level
        frontier = new.tolist()
    return INF


def components(g):
    """Connected components by repeated breadth-first search."""
    labels = np.full(len(g), -1, dtype=np.int64)
    sizes, reps = [], []
    unvisited = np.ones(len(g), dtype=bool)
    for start in range(len(g)):
        if labels[start] >= 0:
            continue
        label = len(sizes)
        labels[start] = label
        unvisited[start] = False
        frontier, size = [start], 1
        while frontier:
            new = _expand(g, frontier, unvisited)
            unvisited[new] = False
            labels[new] = label
            size += new.shape[0]
            frontier = new.tolist()
        sizes.append(size)
        reps.append(int(g.vertices[start]))
    labels.setflags(write=False)
    return ComponentReport(len(sizes), sizes, reps, labels)


def _blocks(total, parts, align=1):
    parts = max(1, min(parts, -(-total // align) if total else 1))
    step = -(-total // parts)
    step = -(-step // align) * align
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)] or [(0, 0)]


def adjacency(g, threads=1):
    """CSR adjacency ``(indptr, indices)`` over vertex positions."""
    n, m = g.domain.n, g.domain.m
    blocks = _blocks(len(g), threads)
    if len(blocks) == 1:
        results = [kernels.adjacency_rows(g.entries, n, m, *blocks[0])]
    else:
        with ThreadPoolExecutor(len(blocks)) as pool:
            results = list(pool.map(lambda b: kernels.adjacency_rows(g.entries, n, m, *b), blocks))
    counts = np.concatenate([r[0] for r in results])
    indices = np.concatenate([r[1] for r in results])
    indptr = np.zeros(len(g) + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, indices


def eccentricities(g, threads=1, csr=None):
    """Per-vertex eccentricity within its component and reached-vertex counts."""
    indptr, indices = adjacency(g, threads) if csr is None else csr
    sources = np.arange(len(g), dtype=np.int64)
    blocks = _blocks(len(g), threads, align=64)
    if len(blocks) == 1:
        parts = [kernels.msbfs(indptr, indices, sources)]
    else:
        with ThreadPoolExecutor(len(blocks)) as pool:
            parts = list(pool.map(lambda b: kernels.msbfs(indptr, indices, sources[b[0]:b[1]]), blocks))
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def diameter(g, threads=None, per_component=False):
    """Exact diameter by BFS from every vertex; ``math.inf`` when disconnected.

    With ``per_component=True`` returns the list of component diameters in the
    order of :func:`components`.
    """
    threads = default_threads() if threads is None else threads
    if len(g) == 0:
        return [] if per_component else 0
    ecc, reached = eccentricities(g, threads)
    if per_component:
        report = components(g)
        out = [0] * report.component_count
        for label, e in zip(report.labels, ecc):
            out[label] = max(out[label], int(e))
        return out
    if (reached < len(g)).any():
        return INF
    return int(ecc.max())


def distance_matrix(g, csr=None):
    """All-pairs distances (``inf`` where unreachable) via an independent BFS."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    indptr, indices = adjacency(g) if csr is None else csr
    adj = csr_matrix((np.ones(indices.shape[0], dtype=np.int8), indices, indptr),
                     shape=(len(g), len(g)))
    return shortest_path(adj, method="D", directed=False, unweighted=True)


def edges(g, threads=1):
    """Undirected edges as ascending ``(src, dst)`` pairs of encoded indices."""
    indptr, indices = adjacency(g, threads)
    src = np.repeat(np.arange(len(g)), np.diff(indptr))
    keep = src < indices
    return np.stack([g.vertices[src[keep]], g.vertices[indices[keep]]], axis=1)


def export_graph(g, fmt, guard=DEFAULT_EXPORT_GUARD):
    """Serialise the graph as DOT or as a ``src,dst`` CSV edge list."""
    if len(g) > guard:
        raise GuardExceeded(f"export of the commuting graph of {g.domain}", len(g), guard)
    pairs = edges(g)
    out = io.StringIO()
    if fmt == "dot":
        out.write("graph commuting {\n")
        for pos in range(len(g)):
            out.write(f'  v{int(g.vertices[pos])} [label="{to_text(g.matrix(pos))}"];\n')
        for a, b in pairs:
            out.write(f"  v{a} -- v{b};\n")
        out.write("}\n")
    elif fmt == "csv":
        out.write("src,dst\n")
        for a, b in pairs:
            out.write(f"{a},{b}\n")
    else:
        raise PreconditionError(f"unknown export format {fmt!r}")
    return out.getvalue().encode()


def parse_csv(data):
    """Edge set of a CSV export, as a set of ``(src, dst)`` integer pairs."""
    text = data.decode() if isinstance(data, bytes) else data
    lines = text.strip().splitlines()
    if not lines or lines[0].strip() != "src,dst":
        raise PreconditionError("missing src,dst header")
    return {tuple(int(v) for v in line.split(",")) for line in lines[1:] if line.strip()}
