import math

import networkx as nx
import numpy as np
import pytest

from commgraph import (DomainSpec, GraphView, GuardExceeded, ModMatrix, NotAVertex,
                       PreconditionError, bfs_distance, build_graph, center_of,
                       components, diameter, encode, export_graph, identity,
                       mat_add, neighbors, parse_csv, scalar, scalar_mul, unit)
from commgraph.graph import distance_matrix, edges
from commgraph.zmod import domain_order

from conftest import oracle_graph

B2 = ModMatrix.from_rows([[1, 1], [0, 1]], 2)
C2 = ModMatrix.from_rows([[1, 0], [1, 1]], 2)


def P(m):
    return ModMatrix.from_rows([[1, 1], [0, 1]], m)


@pytest.fixture(scope="module")
def ring4():
    return build_graph(DomainSpec("m", 2, 4))


@pytest.fixture(scope="module")
def ring2():
    return build_graph(DomainSpec("m", 2, 2))


class TestBuild:
    @pytest.mark.parametrize("kind,n,m,count", [("m", 2, 2, 14), ("gl", 2, 2, 5), ("m", 2, 4, 252),
                                                ("gl", 2, 6, 286), ("m", 2, 6, 1290)])
    def test_vertex_counts(self, kind, n, m, count):
        assert len(build_graph(DomainSpec(kind, n, m))) == count

    @pytest.mark.parametrize("kind,n,m", [(k, 2, m) for k in ("m", "gl", "sl") for m in (2, 3, 4)]
                             + [("gl", 3, 2)])
    def test_vertices_match_oracle(self, kind, n, m):
        g = build_graph(DomainSpec(kind, n, m))
        expected, center = oracle_graph(kind, n, m)
        assert g.vertices.tolist() == sorted(expected.nodes)
        assert set(g.center) == center

    @pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (2, 5), (2, 6), (3, 2), (3, 3)])
    def test_ring_vertex_count_formula(self, n, m):
        g = build_graph(DomainSpec("m", n, m))
        assert len(g) == m ** (n * n) - m
        assert set(g.center) == {encode(c) for c in center_of(g.domain)}

    def test_guard(self):
        with pytest.raises(GuardExceeded) as info:
            build_graph(DomainSpec("m", 3, 4), guard=1000)
        assert info.value.required >= 4 ** 9 - 4

    def test_n1_rejected(self):
        with pytest.raises(PreconditionError):
            build_graph(DomainSpec("m", 1, 4))

    def test_immutable(self, ring4):
        with pytest.raises(ValueError):
            ring4.vertices[0] = 1


class TestNeighbors:
    def test_class_a_example(self, ring2):
        assert set(neighbors(ring2, B2)) == {encode(unit(2, 2, 0, 1))}

    def test_irreflexive(self, ring4):
        for pos in range(0, len(ring4), 17):
            v = int(ring4.vertices[pos])
            assert v not in set(neighbors(ring4, v))

    def test_e12_neighbour(self, ring4):
        e12 = unit(2, 4, 0, 1)
        assert encode(mat_add(scalar_mul(2, e12), identity(2, 4))) in set(neighbors(ring4, e12))

    def test_matches_oracle(self):
        g = build_graph(DomainSpec("gl", 2, 3))
        oracle, _ = oracle_graph("gl", 2, 3)
        for v in g.vertices.tolist():
            assert list(neighbors(g, v)) == sorted(oracle.neighbors(v))

    def test_not_a_vertex(self, ring4):
        with pytest.raises(NotAVertex):
            list(neighbors(ring4, scalar(2, 2, 4)))


class TestDistance:
    def test_self(self, ring4):
        assert bfs_distance(ring4, P(4), P(4)) == 0

    def test_field_split(self, ring2):
        assert bfs_distance(ring2, B2, C2) == math.inf

    def test_p_to_transpose(self, ring4):
        assert bfs_distance(ring4, P(4), P(4).T) == 3

    def test_matches_oracle(self):
        g = build_graph(DomainSpec("m", 2, 3))
        oracle, _ = oracle_graph("m", 2, 3)
        rng = np.random.default_rng(5)
        for a, b in rng.choice(g.vertices, size=(40, 2)):
            try:
                expected = nx.shortest_path_length(oracle, int(a), int(b))
            except nx.NetworkXNoPath:
                expected = math.inf
            assert bfs_distance(g, int(a), int(b)) == expected

    def test_bounded_by_diameter(self, ring4):
        d = diameter(ring4)
        dist = distance_matrix(ring4)
        assert dist.max() == d == 3


class TestComponents:
    def test_composite_connected(self, ring4):
        report = components(ring4)
        assert report.component_count == 1
        assert report.component_sizes == [252]

    def test_field_class_a_isolated(self, ring2):
        report = components(ring2)
        assert report.component_count > 1
        a = {encode(unit(2, 2, 0, 1)), encode(B2)}
        label = report.label_of(ring2, B2)
        members = {int(v) for v, lab in zip(ring2.vertices, report.labels) if lab == label}
        assert members == a
        assert sum(report.component_sizes) == len(ring2)

    def test_gl3_disconnected(self):
        assert components(build_graph(DomainSpec("gl", 2, 3))).component_count > 1

    @pytest.mark.parametrize("kind,m", [("m", 2), ("m", 3), ("gl", 3), ("sl", 3), ("gl", 4), ("sl", 5)])
    def test_matches_networkx(self, kind, m):
        g = build_graph(DomainSpec(kind, 2, m))
        oracle, _ = oracle_graph(kind, 2, m)
        report = components(g)
        expected = sorted(len(c) for c in nx.connected_components(oracle))
        assert sorted(report.component_sizes) == expected
        for comp in nx.connected_components(oracle):
            assert len({report.label_of(g, v) for v in comp}) == 1

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_class_a_closed_under_neighbours(self, p):
        g = build_graph(DomainSpec("m", 2, p))
        e12 = unit(2, p, 0, 1)
        cls = {encode(mat_add(scalar(a, 2, p), scalar_mul(b, e12))) for a in range(p) for b in range(1, p)}
        for v in cls:
            assert set(neighbors(g, v)) <= cls


class TestDiameter:
    def test_examples(self, ring4, ring2):
        assert diameter(ring4) == 3
        assert diameter(build_graph(DomainSpec("gl", 2, 6))) == 3
        assert diameter(ring2) == math.inf

    @pytest.mark.parametrize("kind,n,m", [("m", 2, 3), ("gl", 2, 3), ("gl", 2, 4), ("sl", 2, 4), ("gl", 3, 2)])
    def test_per_component_matches_networkx(self, backend, kind, n, m):
        g = build_graph(DomainSpec(kind, n, m))
        oracle, _ = oracle_graph(kind, n, m)
        report = components(g)
        got = diameter(g, threads=1, per_component=True)
        for comp in nx.connected_components(oracle):
            label = report.label_of(g, next(iter(comp)))
            assert got[label] == nx.diameter(oracle.subgraph(comp))
        connected = nx.is_connected(oracle)
        assert diameter(g, threads=1) == (nx.diameter(oracle) if connected else math.inf)

    @pytest.mark.parametrize("threads", [2, 3, 4, 7])
    def test_thread_count_does_not_change_result(self, ring4, threads):
        assert diameter(ring4, threads=threads) == diameter(ring4, threads=1)
        assert diameter(ring4, threads=threads, per_component=True) == [3]

    @pytest.mark.parametrize("kind,m", [("m", 6), ("gl", 4), ("m", 8), ("gl", 9)])
    def test_composite_is_connected_with_diameter_three(self, kind, m):
        g = build_graph(DomainSpec(kind, 2, m))
        assert components(g).component_count == 1
        assert diameter(g) == 3


class TestExport:
    def test_dot_gl2(self):
        g = build_graph(DomainSpec("gl", 2, 2))
        text = export_graph(g, "dot").decode()
        assert text.startswith("graph commuting {")
        assert text.count("[label=") == 5
        assert 'label="2:2:[1,1,0,1]"' in text

    def test_dot_no_edges(self):
        # GL(2,Z_2) is S_3: only the two 3-cycles commute, the involutions are pairwise non-commuting
        g = build_graph(DomainSpec("gl", 2, 2))
        assert edges(g).tolist() == [[7, 14]]
        keep = [i for i in range(len(g)) if g.matrix(i) @ g.matrix(i) == identity(2, 2)]
        sub = GraphView(g.domain, g.vertices[keep], g.entries[keep], g.center, g.guard)
        text = export_graph(sub, "dot").decode()
        assert text.count("[label=") == 3
        assert "--" not in text

    @pytest.mark.parametrize("kind,m", [("m", 2), ("gl", 3), ("m", 4)])
    def test_csv_round_trip(self, kind, m):
        g = build_graph(DomainSpec(kind, 2, m))
        pairs = parse_csv(export_graph(g, "csv"))
        oracle, _ = oracle_graph(kind, 2, m)
        assert pairs == {tuple(sorted(e)) for e in oracle.edges}
        assert all(a < b for a, b in pairs)

    def test_guard(self, ring4):
        with pytest.raises(GuardExceeded):
            export_graph(ring4, "dot", guard=100)

    def test_bad_format(self, ring2):
        with pytest.raises(PreconditionError):
            export_graph(ring2, "json")
        with pytest.raises(PreconditionError):
            parse_csv("a,b\n1,2\n")


@pytest.mark.parametrize("kind,n,m", [("m", 2, 4), ("gl", 2, 6), ("sl", 2, 9), ("gl", 3, 2)])
def test_order_matches_enumeration(kind, n, m):
    g = build_graph(DomainSpec(kind, n, m))
    assert len(g) + len(g.center) == domain_order(g.domain)
