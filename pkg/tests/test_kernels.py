import os
import subprocess
import sys

import networkx as nx
import numpy as np
import pytest

from commgraph import kernels
from commgraph.batch import decode_batch, det_batch, encode_batch

from conftest import BACKENDS, oracle_det, oracle_mul


def all_entries(n, m):
    return decode_batch(np.arange(m ** (n * n), dtype=np.int64), n, m)


def test_decode_encode_batch_round_trip():
    idx = np.arange(3 ** 4, dtype=np.int64)
    entries = decode_batch(idx, 2, 3)
    assert entries[5].tolist() == [0, 0, 1, 2]
    assert (encode_batch(entries, 3) == idx).all()


@pytest.mark.parametrize("n,m", [(2, 5), (3, 2)])
def test_det_batch_matches_oracle(n, m):
    entries = all_entries(n, m)
    got = det_batch(entries, n, m)
    assert got.tolist() == [oracle_det(tuple(e), n) % m for e in entries.tolist()]


@pytest.mark.parametrize("n,m", [(2, 4), (2, 6), (3, 2)])
def test_commute_mask_matches_oracle(backend, n, m):
    entries = all_entries(n, m)
    rng = np.random.default_rng(1)
    for x in entries[rng.choice(entries.shape[0], 5, replace=False)]:
        got = kernels.commute_mask(entries, x, n, m)
        xs = tuple(int(v) for v in x)
        expected = [oracle_mul(tuple(e), xs, n, m) == oracle_mul(xs, tuple(e), n, m)
                    for e in entries.tolist()]
        assert got.tolist() == expected


@pytest.mark.parametrize("n,m", [(2, 4), (2, 6), (3, 2)])
def test_scan_matches_brute_force(backend, n, m):
    entries = all_entries(n, m)
    fixed = np.stack([entries[7], entries[-3]])
    total = entries.shape[0]
    got = kernels.scan_commuting(n, m, fixed, 3, total - 2)
    keep = kernels.commute_mask(entries, fixed[0], n, m) & kernels.commute_mask(entries, fixed[1], n, m)
    expected = [i for i in np.flatnonzero(keep) if 3 <= i < total - 2]
    assert got.tolist() == expected


def test_scan_empty_range(backend):
    assert kernels.scan_commuting(2, 3, np.zeros((1, 4), dtype=np.int64), 5, 5).tolist() == []


def test_range_guard():
    with pytest.raises(OverflowError):
        kernels.commute_mask(np.zeros((1, 4), dtype=np.int64), np.zeros(4, dtype=np.int64), 2, 1 << 31)


def random_graph(seed, nv=150, p=0.03):
    g = nx.gnp_random_graph(nv, p, seed=seed)
    indptr = np.zeros(nv + 1, dtype=np.int64)
    rows = [sorted(g.neighbors(v)) for v in range(nv)]
    np.cumsum([len(r) for r in rows], out=indptr[1:])
    indices = np.array([u for r in rows for u in r], dtype=np.int64)
    return g, indptr, indices


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_msbfs_matches_networkx(backend, seed):
    g, indptr, indices = random_graph(seed)
    sources = np.arange(g.number_of_nodes(), dtype=np.int64)
    ecc, reached = kernels.msbfs(indptr, indices, sources)
    for v in g.nodes:
        lengths = nx.single_source_shortest_path_length(g, v)
        assert ecc[v] == max(lengths.values())
        assert reached[v] == len(lengths)


def test_msbfs_isolated_vertices(backend):
    indptr = np.zeros(4, dtype=np.int64)
    ecc, reached = kernels.msbfs(indptr, np.empty(0, dtype=np.int64), np.arange(3, dtype=np.int64))
    assert ecc.tolist() == [0, 0, 0]
    assert reached.tolist() == [1, 1, 1]


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
@pytest.mark.parametrize("n,m", [(2, 6), (2, 9), (3, 2)])
def test_backends_agree_on_adjacency_and_bfs(n, m):
    py, cy = kernels.backend("python"), kernels.backend("cython")
    entries = all_entries(n, m)
    a_counts, a_flat = py.adjacency_rows(entries, n, m, 0, entries.shape[0])
    b_counts, b_flat = cy.adjacency_rows(entries, n, m, 0, entries.shape[0])
    assert (a_counts == b_counts).all() and (a_flat == b_flat).all()
    indptr = np.concatenate([[0], np.cumsum(a_counts)])
    sources = np.arange(0, entries.shape[0], 7, dtype=np.int64)
    for x, y in zip(py.msbfs(indptr, a_flat, sources), cy.msbfs(indptr, a_flat, sources)):
        assert (x == y).all()


def test_pure_env_selects_fallback():
    env = dict(os.environ, COMMGRAPH_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import commgraph; print(commgraph.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True).stdout
    assert out.strip() == "python"
