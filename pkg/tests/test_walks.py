import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, permuted
from oracles import edge_set, enumerate_walk_ends, walk_counts_dfs
from walkcanon import Graph, SizeError, random_gnp
from walkcanon.gadget import shrikhande
from walkcanon.walks import (
    bareiss_determinant,
    canonize_walk3,
    is_wm_discrete,
    is_wm_singular,
    pair_walk_counts,
    walk_matrix,
    walk_signature,
    walk_step,
    wm_equivalent,
)


def dfs_rows(g, kmax):
    return walk_counts_dfs(edge_set(g.n, g.edges()), kmax)


class TestWalkStep:
    def test_triangle_degrees(self):
        assert walk_step(Graph.complete(3), [1, 1, 1]).tolist() == [2, 2, 2]

    def test_path(self, path3):
        # walks of length 2: endpoints 0-1-0, 0-1-2; centre 1-0-1, 1-2-1
        assert dfs_rows(path3, 2) == [[1, 1, 2], [1, 2, 2], [1, 1, 2]]
        assert walk_step(path3, [1, 2, 1]).tolist() == [2, 2, 2]

    def test_edgeless(self):
        assert walk_step(Graph.empty(4), [5, 1, 2, 9]).tolist() == [0, 0, 0, 0]

    def test_overflow_guard(self):
        big = 2**63
        with pytest.raises(OverflowError):
            walk_step(Graph.complete(3), [big, big, big])
        assert walk_step(Graph.complete(3), [big, big, big], exact=True) == [2 * big] * 3

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            walk_step(Graph.complete(3), [1, 1])


class TestSignature:
    def test_path(self, path3):
        sig = walk_signature(path3, 3)
        assert sig.as_tuples() == [(1, 2, 2), (2, 2, 4), (1, 2, 2)]
        assert [r[1:] for r in dfs_rows(path3, 3)] == [[1, 2, 2], [2, 2, 4], [1, 2, 2]]

    def test_shrikhande_regular(self):
        assert walk_signature(shrikhande(), 3).as_tuples() == [(6, 36, 216)] * 16

    def test_edgeless(self):
        assert walk_signature(Graph.empty(2), 3).as_tuples() == [(0, 0, 0)] * 2

    def test_size_guard(self):
        with pytest.raises(SizeError):
            walk_signature(Graph.empty(2**16), 4)
        with pytest.raises(ValueError):
            walk_signature(Graph.empty(3), 0)

    @settings(max_examples=150)
    @given(graphs(max_n=7), st.integers(1, 5))
    def test_matches_dfs(self, g, k):
        rows = walk_signature(g, k).as_tuples()
        assert rows == [tuple(r[1:]) for r in dfs_rows(g, k)]

    @settings(max_examples=100)
    @given(permuted(graphs(max_n=9)), st.integers(1, 4))
    def test_permutation_equivariance(self, gp, k):
        g, perm = gp
        sig = walk_signature(g, k)
        psig = walk_signature(g.relabel(perm), k)
        for x in range(g.n):
            assert psig.row(perm[x]) == sig.row(x)


class TestCanonize:
    def test_path_gives_up(self, path3):
        lab = canonize_walk3(path3)
        assert lab.outcome == "GiveUp" and lab.witness == (0, 2)

    def test_shrikhande_gives_up(self):
        lab = canonize_walk3(shrikhande())
        assert not lab.discrete and set(lab.labels) == {(6, 36, 216)}

    def test_witness_is_first_in_sorted_order(self):
        g = Graph.from_edges(6, [(0, 1), (1, 4), (4, 3), (3, 2), (1, 5), (3, 5)])
        rows = walk_signature(g, 3).as_tuples()
        order = sorted(range(6), key=lambda x: (rows[x], x))
        first = next((a, b) for a, b in zip(order, order[1:]) if rows[a] == rows[b])
        assert canonize_walk3(g).witness == tuple(sorted(first))

    def test_discrete_graph(self):
        g = random_gnp(200, 0.5, 1)
        lab = canonize_walk3(g)
        assert lab.discrete and lab.witness is None
        assert len(set(lab.labels)) == 200

    def test_json(self, path3):
        doc = canonize_walk3(path3).to_json()
        assert json.loads(json.dumps(doc)) == {
            "outcome": "GiveUp",
            "labels": [[1, 2, 2], [2, 2, 4], [1, 2, 2]],
            "witness": [0, 2],
        }

    @settings(max_examples=60)
    @given(permuted(graphs(min_n=1, max_n=9)))
    def test_labels_are_canonical(self, gp):
        g, perm = gp
        a, b = canonize_walk3(g), canonize_walk3(g.relabel(perm))
        assert a.discrete == b.discrete
        assert sorted(a.labels) == sorted(b.labels)

    def test_needs_a_vertex(self):
        with pytest.raises(ValueError):
            canonize_walk3(Graph.empty(0))


class TestWalkMatrix:
    def test_k2(self):
        assert walk_matrix(Graph.complete(2)).rows == ((1, 1), (1, 1))

    def test_path(self, path3):
        assert walk_matrix(path3).rows == ((1, 1, 2), (1, 2, 2), (1, 1, 2))

    def test_c4(self):
        assert walk_matrix(Graph.cycle(4)).rows == ((1, 2, 4, 8),) * 4

    @settings(max_examples=60)
    @given(graphs(min_n=1, max_n=10))
    def test_column_recurrence(self, g):
        wm = walk_matrix(g)
        assert wm.column(0) == [1] * g.n
        for j in range(g.n - 1):
            assert wm.column(j + 1) == walk_step(g, wm.column(j), exact=True)

    def test_bigints(self):
        g = Graph.complete(40)
        assert walk_matrix(g).rows[0][-1] == 39**39


class TestPredicates:
    def test_path_not_discrete(self, path3):
        d = is_wm_discrete(path3)
        assert not d and d.witness == (0, 2)

    def test_discrete_truthy(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)])
        wm = walk_matrix(g).rows
        assert bool(is_wm_discrete(g)) == (len(set(wm)) == 4)

    def test_equivalence(self, path3):
        assert not wm_equivalent(Graph.complete(3), path3)
        assert not wm_equivalent(Graph.complete(3), Graph.complete(4))
        g = random_gnp(12, 0.5, 4)
        perm = np.random.default_rng(0).permutation(12)
        assert wm_equivalent(g, g.relabel(perm))

    def test_singular(self, path3):
        assert is_wm_singular(path3)
        assert is_wm_singular(Graph.empty(3))
        with pytest.raises(SizeError):
            is_wm_singular(Graph.empty(200))

    def test_random_mostly_nonsingular(self):
        verdicts = [is_wm_singular(random_gnp(30, 0.5, s)) for s in range(20)]
        assert sum(verdicts) <= 5

    @settings(max_examples=80)
    @given(graphs(min_n=1, max_n=9))
    def test_duplicate_rows_imply_singular(self, g):
        if not is_wm_discrete(g):
            assert is_wm_singular(g)


class TestBareiss:
    @pytest.mark.parametrize(
        "m, det",
        [
            ([[2]], 2),
            ([[1, 2], [3, 4]], -2),
            ([[0, 1], [1, 0]], -1),
            ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 0),
            ([[0, 0, 1], [0, 1, 0], [1, 0, 0]], -1),
            ([], 1),
        ],
    )
    def test_known(self, m, det):
        assert bareiss_determinant(m) == det

    @settings(max_examples=100)
    @given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_against_leibniz(self, m):
        import itertools

        n = len(m)

        def sign(p):
            s = 1
            for i in range(n):
                for j in range(i + 1, n):
                    if p[i] > p[j]:
                        s = -s
            return s

        expected = 0
        for p in itertools.permutations(range(n)):
            term = sign(p)
            for i in range(n):
                term *= m[i][p[i]]
            expected += term
        assert bareiss_determinant(m) == expected


class TestPairWalks:
    def test_empty_walk(self):
        g = random_gnp(6, 0.5, 2)
        assert all(pair_walk_counts(g, x, x, 0) == 1 for x in range(6))

    def test_triangle(self):
        assert pair_walk_counts(Graph.complete(3), 0, 1, 2) == 1

    def test_domain(self):
        with pytest.raises(ValueError):
            pair_walk_counts(Graph.complete(3), 0, 3, 1)

    def test_shrikhande_adjacent_pairs_agree(self):
        s = shrikhande()
        for k in range(6):
            assert len({pair_walk_counts(s, u, v, k) for u, v in s.edges()}) == 1

    @settings(max_examples=60)
    @given(graphs(min_n=1, max_n=7), st.integers(0, 4))
    def test_matches_dfs(self, g, k):
        adj = edge_set(g.n, g.edges())
        for x in range(g.n):
            ends = enumerate_walk_ends(adj, x, k)[k]
            assert [pair_walk_counts(g, x, y, k) for y in range(g.n)] == ends
