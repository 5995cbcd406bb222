"""Seeded verification suites behind ``commgraph verify``.

Each suite returns a :class:`SuiteResult`; randomness comes only from
generators seeded with ``seed`` (``random.Random`` or numpy's
``default_rng``), so a seed reproduces a run exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import PreconditionError
from .graph import build_graph, components, distance_matrix
from .modulus import CoprimeSplit, check_units_lemma, classify
from .witness import field_isolated_component, lower_bound_report, path3, verify_path
from .zmod import (DomainKind, DomainSpec, ModMatrix, commutes, determinant,
                   identity, is_invertible, mat_add, scalar, scalar_mul)

DETS_GRID = [(n, m) for n in (2, 3) for m in (6, 10, 15)]
PMATRIX_GRID = [(n, m) for n in (2, 3) for m in (4, 6, 8, 9)]
PATH_GRID = [("m", 2, 4), ("m", 2, 6), ("gl", 2, 4), ("gl", 2, 6)]
PRIME_POWER_PARAMS = [(2, 2), (2, 3), (3, 2)]
COPRIME_PARAMS = [(2, 3), (4, 3), (2, 5)]
MAX_FAILURES_KEPT = 10

_invertible = lru_cache(maxsize=1 << 16)(is_invertible)


@dataclass
class SuiteResult:
    suite: str
    passed: int = 0
    failed: int = 0
    params: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return self.failed == 0 and self.passed > 0

    def record(self, ok, message=""):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < MAX_FAILURES_KEPT:
                self.failures.append(message)


def random_matrix(rng, n, m):
    return ModMatrix(n, m, tuple(rng.randrange(m) for _ in range(n * n)))


def random_invertible(rng, n, m):
    while True:
        x = random_matrix(rng, n, m)
        if is_invertible(x):
            return x


def dets_suite(trials=1000, seed=0, grid=None):
    """Determinant sum identity for ``s*X + t*Y`` with invertible ``X, Y`` over Z_{st}."""
    grid = DETS_GRID if grid is None else grid
    result = SuiteResult("dets", params={"trials": trials, "seed": seed, "grid": list(grid)})
    rng = random.Random(seed)
    for n, m in grid:
        split = classify(m)
        if not isinstance(split, CoprimeSplit):
            raise PreconditionError(f"dets suite needs m with a coprime split, got {m}")
        s, t = split.s, split.t
        for _ in range(trials):
            x, y = random_invertible(rng, n, m), random_invertible(rng, n, m)
            z = mat_add(scalar_mul(s, x), scalar_mul(t, y))
            lhs = determinant(z).value
            rhs = (s ** n * determinant(x).value + t ** n * determinant(y).value) % m
            result.record(lhs == rhs and is_invertible(z), f"n={n} m={m} X={x} Y={y}")
    return result


def _coprime_tuples(rng, count, bound):
    # rejection sampling in vectorised batches; order of acceptance is seed-determined
    out = []
    need = count
    while need > 0:
        draw = rng.integers(1, bound + 1, size=(max(4 * need, 1024), 4), dtype=np.int64)
        ok = np.ones(draw.shape[0], dtype=bool)
        for i, j in combinations(range(4), 2):
            ok &= np.gcd(draw[:, i], draw[:, j]) == 1
        accepted = draw[ok][:need]
        out.append(accepted)
        need -= accepted.shape[0]
    return np.concatenate(out)


def units_suite(trials=100_000, seed=0, bound=10 ** 6, max_exponent=16):
    """Coprimality of ``u*s**k + v*t**l`` and ``s*t`` on random pairwise coprime tuples."""
    result = SuiteResult("units", params={"trials": trials, "seed": seed, "bound": bound})
    rng = np.random.default_rng(seed)
    tuples = _coprime_tuples(rng, trials, bound).tolist()
    exps = rng.integers(1, max_exponent + 1, size=(trials, 2)).tolist()
    for (u, v, s, t), (k, l) in zip(tuples, exps):
        result.record(check_units_lemma(u, v, s, t, k, l), f"{(u, v, s, t)} k={k} l={l}")
    return result


def middle_edge_suite(trials=10_000, seed=0):
    """Both middle-edge commutation identities, ``trials`` random cases each."""
    result = SuiteResult("middle", params={"trials": trials, "seed": seed})
    rng = random.Random(seed)
    for i in range(trials):
        p, t = PRIME_POWER_PARAMS[i % len(PRIME_POWER_PARAMS)]
        n, m = rng.choice((2, 3)), p ** t
        q, one = p ** (t - 1), identity(n, m)
        a = mat_add(scalar_mul(q, random_matrix(rng, n, m)), one)
        b = mat_add(scalar_mul(q, random_matrix(rng, n, m)), one)
        result.record(commutes(a, b), f"prime-power p={p} t={t} {a} {b}")
    for i in range(trials):
        s, t = COPRIME_PARAMS[i % len(COPRIME_PARAMS)]
        n, m = rng.choice((2, 3)), s * t
        a = mat_add(scalar_mul(s, random_matrix(rng, n, m)), scalar(rng.randrange(m), n, m))
        b = mat_add(scalar_mul(t, random_matrix(rng, n, m)), scalar(rng.randrange(m), n, m))
        result.record(commutes(a, b), f"coprime s={s} t={t} {a} {b}")
    return result


def pmatrix_suite(grid=None):
    grid = PMATRIX_GRID if grid is None else grid
    result = SuiteResult("pmatrix", params={"grid": list(grid)})
    for n, m in grid:
        report = lower_bound_report(n, m)
        result.record(report.ok, repr(report))
    return result


def component_suite(primes=(2, 3, 5)):
    """Isolated component over Z_p, then BFS separation of B and C in M, GL and SL."""
    result = SuiteResult("component", params={"primes": list(primes)})
    for p in primes:
        try:
            field_isolated_component(p)
            result.record(True)
        except Exception as exc:  # any failed self-check counts against the suite
            result.record(False, f"p={p}: {exc}")
        b = ModMatrix.from_rows([[1, 1], [0, 1]], p)
        c = ModMatrix.from_rows([[1, 0], [1, 1]], p)
        for kind in DomainKind:
            g = build_graph(DomainSpec(kind, 2, p))
            report = components(g)
            split = report.component_count >= 2 and report.label_of(g, b) != report.label_of(g, c)
            result.record(split, f"p={p} {kind.value}: {report.component_count} components")
    return result


def path_exhaustive_suite(grid=None):
    """path3 over every ordered pair of distinct vertices, checked against BFS distances."""
    grid = PATH_GRID if grid is None else grid
    result = SuiteResult("path-exhaustive", params={"grid": list(grid)})
    for kind, n, m in grid:
        domain = DomainSpec(kind, n, m)
        g = build_graph(domain)
        dist = distance_matrix(g)
        mats = [g.matrix(i) for i in range(len(g))]
        gl = domain.kind is DomainKind.GENERAL_LINEAR
        for i, x in enumerate(mats):
            for j, y in enumerate(mats):
                if i == j:
                    continue
                w = path3(x, y, domain)
                ok = (w.verified and bool(verify_path(w)) and w.length <= 3
                      and w.length >= dist[i, j]
                      and (not gl or all(_invertible(v) for v in w.interior)))
                if not ok:
                    result.record(False, f"{domain}: {w.serialize()}")
                else:
                    result.passed += 1
    return result


SUITES = {
    "dets": dets_suite,
    "units": units_suite,
    "middle": middle_edge_suite,
    "pmatrix": pmatrix_suite,
    "component": component_suite,
    "path-exhaustive": path_exhaustive_suite,
}
