import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import graphs
from walkcanon import Graph, Graph6Error, SizeError, degree_sequence, disjoint_union, random_gnp
from walkcanon.gadget import shrikhande
from walkcanon.graph import (
    VertexMap,
    from_adjlist,
    from_graph6,
    parse_graph,
    to_adjlist,
    to_graph6,
)


class TestGraph:
    def test_rejects_asymmetric(self):
        adj = np.zeros((3, 3), dtype=bool)
        adj[0, 1] = True
        with pytest.raises(ValueError, match="symmetric"):
            Graph(adj)

    def test_rejects_loops(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph(np.eye(2, dtype=bool))
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(1, 1)])

    def test_adjacency_is_read_only(self):
        g = Graph.complete(3)
        with pytest.raises(ValueError):
            g.adjacency[0, 1] = False

    def test_input_array_is_copied(self):
        adj = np.zeros((2, 2), dtype=bool)
        g = Graph(adj)
        adj[0, 1] = adj[1, 0] = True
        assert g.num_edges == 0

    def test_relabel(self, path3):
        h = path3.relabel([1, 0, 2])
        assert sorted(h.edges()) == [(0, 1), (0, 2)]
        with pytest.raises(ValueError):
            path3.relabel([0, 0, 1])

    @given(graphs())
    def test_invariants(self, g):
        a = g.adjacency
        assert np.array_equal(a, a.T)
        assert not a.diagonal().any()
        assert g.num_edges == len(list(g.edges()))


class TestRandomGnp:
    def test_p_zero_is_edgeless(self):
        assert random_gnp(5, 0.0, 123).num_edges == 0

    def test_p_one_is_complete(self):
        assert random_gnp(5, 1.0, 99) == Graph.complete(5)
        assert random_gnp(5, 1.0, 99).num_edges == 10

    def test_deterministic(self):
        a = random_gnp(100, 0.5, 2**63 + 11)
        b = random_gnp(100, 0.5, 2**63 + 11)
        assert a == b
        assert np.array_equal(a.adjacency, b.adjacency)
        assert a != random_gnp(100, 0.5, 2**63 + 12)

    @pytest.mark.parametrize("p", [-0.1, 1.5, float("nan")])
    def test_probability_domain(self, p):
        with pytest.raises(ValueError):
            random_gnp(4, p, 0)

    def test_pair_order_is_lexicographic(self):
        # the k-th uniform of the Philox stream decides the k-th pair (x < y)
        n, p, seed = 7, 0.4, 5
        draws = np.random.Generator(np.random.Philox(seed)).random(n * (n - 1) // 2)
        expected = {pq for pq, u in zip(itertools.combinations(range(n), 2), draws) if u < p}
        assert set(random_gnp(n, p, seed).edges()) == expected

    def test_mean_edge_count(self):
        counts = np.array([random_gnp(50, 0.5, s).num_edges for s in range(1000)])
        se = counts.std(ddof=1) / np.sqrt(counts.size)
        assert abs(counts.mean() - 612.5) < 3 * se


class TestGraph6:
    # hand-encoded: n=2 -> chr(63+2)='A'; one bit x(0,1) padded to six bits
    # 100000 = 32 -> chr(95)='_', 000000 -> '?'
    def test_k2(self):
        g = from_graph6("A_")
        assert g.n == 2 and list(g.edges()) == [(0, 1)]
        assert to_graph6(Graph.complete(2)) == "A_"

    def test_edgeless_two(self):
        g = from_graph6("A?")
        assert g.n == 2 and g.num_edges == 0

    def test_single_vertex(self):
        assert to_graph6(Graph.empty(1)) == "@"
        assert from_graph6("@").n == 1

    def test_format_reference_example(self):
        # edges 0-2 0-4 1-3 3-4: bits 0100101001 in column order, padded
        # 010010|100100 -> 18, 36 -> 'Q', 'c'; n=5 -> 'D'
        g = Graph.from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)])
        assert to_graph6(g) == "DQc"
        assert from_graph6("DQc") == g

    def test_long_header(self):
        g = random_gnp(70, 0.5, 3)
        s = to_graph6(g)
        assert s[0] == "~" and ord(s[1]) - 63 == 0 and ord(s[3]) - 63 == 70 - 64
        assert from_graph6(s) == g

    def test_optional_header(self):
        assert from_graph6(">>graph6<<A_") == Graph.complete(2)

    @pytest.mark.parametrize(
        "text, offset",
        [
            ("A", 1),  # missing data byte
            ("A_?", 2),  # extra byte
            ("A\x7f", 1),  # out of range
            ("A`", 1),  # padding bit set: 100001
            ("~???", 0),  # n=0 in the long header is non-minimal
            ("", 0),
        ],
    )
    def test_malformed(self, text, offset):
        with pytest.raises(Graph6Error) as exc:
            from_graph6(text)
        assert exc.value.offset == offset

    def test_size_cap(self):
        with pytest.raises(SizeError):
            from_graph6("~~?@????")

    @settings(max_examples=200)
    @given(graphs(max_n=30))
    def test_round_trip(self, g):
        s = to_graph6(g)
        assert from_graph6(s) == g
        assert to_graph6(from_graph6(s)) == s


class TestAdjlist:
    def test_round_trip(self, path3):
        text = to_adjlist(path3)
        assert text == "3\n0 1\n1 2\n"
        assert from_adjlist(text) == path3

    def test_comments_and_blanks(self):
        assert from_adjlist("# triangle\n3\n\n0 1\n1 2 # rim\n0 2\n") == Graph.complete(3)

    @pytest.mark.parametrize("text", ["", "x\n", "2\n0 2\n", "2\n0 0\n", "3\n0 1\n1 0\n", "3\n0 1 2\n"])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            from_adjlist(text)

    def test_parse_graph_detects_format(self, path3):
        assert parse_graph("3\n0 1\n1 2\n") == path3
        assert parse_graph("Bg\n") == path3
        with pytest.raises(ValueError):
            parse_graph("Bg\nBg\n")


class TestUnion:
    def test_two_k2(self):
        u, mg, mh = disjoint_union(Graph.complete(2), Graph.complete(2))
        assert u.n == 4 and sorted(u.edges()) == [(0, 1), (2, 3)]
        assert list(mg) == [0, 1] and list(mh) == [2, 3]

    def test_edgeless(self):
        u, _, _ = disjoint_union(Graph.empty(3), Graph.empty(2))
        assert u == Graph.empty(5)

    @given(graphs(), graphs())
    def test_edge_counts_add(self, g, h):
        u, mg, mh = disjoint_union(g, h)
        assert u.num_edges == g.num_edges + h.num_edges
        assert all(u.has_edge(mg[a], mg[b]) for a, b in g.edges())
        assert all(u.has_edge(mh[a], mh[b]) for a, b in h.edges())

    def test_vertex_map_injective(self):
        with pytest.raises(ValueError):
            VertexMap((0, 0))


class TestDegrees:
    def test_small(self, path3):
        assert degree_sequence(Graph.complete(3)) == [2, 2, 2]
        assert degree_sequence(path3) == [1, 2, 1]

    def test_shrikhande(self):
        assert degree_sequence(shrikhande()) == [6] * 16
