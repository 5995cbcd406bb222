"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--m 9] [--repeat 3]

Times adjacency construction, the 64-wide multi-source BFS, and the
exhaustive commutation scan on the ring M(2, Z_m), and checks that both
backends return identical arrays.
"""
import argparse
import time

import numpy as np

from commgraph import DomainSpec, build_graph, kernels, p_matrix


def best_of(repeat, fn):
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m", type=int, default=9)
    parser.add_argument("--scan-n", type=int, default=3)
    parser.add_argument("--scan-m", type=int, default=6)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    try:
        backends = {"python": kernels.backend("python"), "cython": kernels.backend("cython")}
    except ImportError:
        backends = {"python": kernels.backend("python")}
        print("compiled backend not built; timing numpy only")

    g = build_graph(DomainSpec("m", 2, args.m))
    n, m, nv = 2, args.m, len(g)
    p = p_matrix(args.scan_n, args.scan_m)
    fixed = np.array([p.entries, p.T.entries], dtype=np.int64)
    ambient = args.scan_m ** (args.scan_n ** 2)
    print(f"graph M(2,Z_{m}): {nv} vertices; scan M({args.scan_n},Z_{args.scan_m}): {ambient} matrices")

    results = {}
    for name, impl in backends.items():
        t_adj, (counts, flat) = best_of(args.repeat, lambda: impl.adjacency_rows(g.entries, n, m, 0, nv))
        indptr = np.concatenate([[0], np.cumsum(counts)])
        sources = np.arange(nv, dtype=np.int64)
        t_bfs, (ecc, reached) = best_of(args.repeat, lambda: impl.msbfs(indptr, flat, sources))
        t_scan, hits = best_of(args.repeat, lambda: impl.scan_commuting(args.scan_n, args.scan_m, fixed, 0, ambient))
        results[name] = (flat, ecc, reached, hits)
        print(f"{name:>7}  adjacency {t_adj:8.3f}s  msbfs {t_bfs:8.3f}s  scan {t_scan:8.3f}s"
              f"  edges {flat.shape[0] // 2}  diameter {ecc.max()}")

    if len(results) == 2:
        same = all(np.array_equal(a, b) for a, b in zip(results["python"], results["cython"]))
        print("backends agree" if same else "BACKENDS DISAGREE")
        return 0 if same else 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
