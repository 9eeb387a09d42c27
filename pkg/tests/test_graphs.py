import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqmajority.graphs import (
    CERT_NONE,
    CERT_ONE_LARGER,
    CERT_TWO_DISJOINT,
    GraphError,
    InequalityGraph,
    SizeLimitError,
    ambiguity_certificate,
    balanced_crossing_split,
    cover_bound,
    edges_form_matching,
    is_complement_clique,
    is_perfect_matching,
    large_complement_clique,
    make_graph,
    minimum_vertex_cover,
)

from bruteforce import min_cover_size_oracle


def random_graph(rng, vertex_count, max_edges):
    pairs = list(itertools.combinations(range(vertex_count), 2))
    count = rng.randrange(0, min(max_edges, len(pairs)) + 1)
    return make_graph(vertex_count, rng.sample(pairs, count))


class TestGraphBasics:
    def test_normalization_and_serialization(self):
        g = make_graph(4, [(3, 1), (0, 2), (0, 2)])
        assert g.sorted_edges() == [(0, 2), (1, 3)]
        assert g.to_doc() == {"vertex_count": 4, "edges": [[0, 2], [1, 3]]}
        assert InequalityGraph.from_doc(g.to_doc()) == g

    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            make_graph(4, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            make_graph(4, [(0, 4)])


class TestComplementClique:
    def test_examples(self):
        g = make_graph(4, [(0, 1)])
        assert is_complement_clique(g, {2, 3})
        assert not is_complement_clique(g, {0, 1})
        matching = make_graph(4, [(0, 1), (2, 3)])
        assert is_complement_clique(matching, {0, 2})

    def test_rejects_out_of_range_vertex(self):
        with pytest.raises(GraphError):
            is_complement_clique(make_graph(4, []), {0, 5})


class TestCoverBound:
    def test_examples(self):
        assert cover_bound(InequalityGraph(4)).cover == frozenset()
        assert cover_bound(make_graph(4, [(0, 1), (0, 2)])).cover == frozenset({0})
        triangle = make_graph(4, [(0, 1), (1, 2), (0, 2)])
        assert len(cover_bound(triangle).cover) <= 3

    @settings(max_examples=200, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_always_a_cover_of_at_most_edge_count(self, rng):
        g = random_graph(rng, rng.randrange(2, 9), 10)
        result = cover_bound(g)
        assert not result.exact
        assert len(result.cover) <= len(g.edges)
        assert all(i in result.cover or j in result.cover for i, j in g.edges)


class TestMinimumVertexCover:
    def test_examples(self):
        triangle = make_graph(3, [(0, 1), (1, 2), (0, 2)])
        assert len(minimum_vertex_cover(triangle).cover) == 2
        matching = make_graph(4, [(0, 1), (2, 3)])
        assert len(minimum_vertex_cover(matching).cover) == 2
        star = make_graph(4, [(0, 1), (0, 2), (0, 3)])
        assert minimum_vertex_cover(star).cover == frozenset({0})

    def test_exact_flag_and_limit(self):
        assert minimum_vertex_cover(InequalityGraph(4)).exact
        with pytest.raises(SizeLimitError):
            minimum_vertex_cover(InequalityGraph(25))

    def test_lexicographically_least_witness(self):
        # two minimum covers exist; {0, 2} beats {1, 2} and {1, 3}
        g = make_graph(4, [(0, 1), (2, 3)])
        assert minimum_vertex_cover(g).cover == frozenset({0, 2})

    @settings(max_examples=150, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_matches_independent_enumeration(self, rng):
        g = random_graph(rng, rng.randrange(2, 8), 9)
        result = minimum_vertex_cover(g)
        assert len(result.cover) == min_cover_size_oracle(
            g.vertex_count, g.sorted_edges()
        )
        assert all(i in result.cover or j in result.cover for i, j in g.edges)


class TestMatchingPredicates:
    def test_examples(self):
        assert is_perfect_matching(make_graph(4, [(0, 1), (2, 3)]))
        assert not is_perfect_matching(make_graph(4, [(0, 1), (1, 2)]))
        assert not is_perfect_matching(InequalityGraph(4))

    def test_matching_without_covering_all_vertices(self):
        g = make_graph(6, [(0, 1), (2, 3)])
        assert edges_form_matching(g)
        assert not is_perfect_matching(g)


class TestLargeComplementClique:
    def test_examples(self):
        g = make_graph(4, [(0, 1)])
        assert large_complement_clique(g) == frozenset({1, 2, 3})
        assert large_complement_clique(InequalityGraph(4)) == frozenset(range(4))
        g6 = make_graph(6, [(0, 1), (2, 3)])
        clique = large_complement_clique(g6)
        assert is_complement_clique(g6, clique)
        assert len(clique) >= 4

    @settings(max_examples=200, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_always_a_complement_clique_with_size_bound(self, rng):
        g = random_graph(rng, rng.randrange(2, 10), 12)
        clique = large_complement_clique(g)
        assert is_complement_clique(g, clique)
        assert len(clique) >= g.vertex_count - len(g.edges)


def check_certificate(g, n, cert):
    if cert.kind == CERT_TWO_DISJOINT:
        assert len(cert.witness_a) == n and len(cert.witness_b) == n
        assert not (cert.witness_a & cert.witness_b)
        assert is_complement_clique(g, cert.witness_a)
        assert is_complement_clique(g, cert.witness_b)
    elif cert.kind == CERT_ONE_LARGER:
        assert len(cert.witness_a) == n + 1
        assert cert.witness_b is None
        assert is_complement_clique(g, cert.witness_a)
    else:
        assert cert.witness_a is None and cert.witness_b is None


class TestAmbiguityCertificate:
    def test_empty_graph_has_larger_clique(self):
        cert = ambiguity_certificate(InequalityGraph(4), 2)
        assert cert.kind == CERT_ONE_LARGER
        assert len(cert.witness_a) == 3

    def test_matching_gives_disjoint_cliques(self):
        cert = ambiguity_certificate(make_graph(4, [(0, 1), (2, 3)]), 2)
        assert cert.kind == CERT_TWO_DISJOINT
        assert cert.witness_a == frozenset({0, 2})
        assert cert.witness_b == frozenset({1, 3})

    def test_complete_graph_has_nothing(self):
        g = make_graph(4, list(itertools.combinations(range(4), 2)))
        assert ambiguity_certificate(g, 2).kind == CERT_NONE

    def test_triangle_kills_both_shapes(self):
        # all complement 2-cliques share the remaining vertex
        g = make_graph(4, [(0, 1), (1, 2), (0, 2)])
        assert ambiguity_certificate(g, 2).kind == CERT_NONE

    def test_star_keeps_larger_clique(self):
        g = make_graph(4, [(0, 1), (0, 2), (0, 3)])
        cert = ambiguity_certificate(g, 2)
        assert cert.kind == CERT_ONE_LARGER
        assert cert.witness_a == frozenset({1, 2, 3})

    @settings(max_examples=250, deadline=None)
    @given(st.integers(2, 4), st.randoms(use_true_random=False))
    def test_witnesses_always_validate(self, n, rng):
        g = random_graph(rng, 2 * n, 2 * n + 2)
        cert = ambiguity_certificate(g, n)
        check_certificate(g, n, cert)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(2, 5), st.randoms(use_true_random=False))
    def test_perfect_matchings_split_into_layers(self, n, rng):
        vertices = list(range(2 * n))
        rng.shuffle(vertices)
        edges = [
            (vertices[2 * t], vertices[2 * t + 1]) for t in range(n)
        ]
        g = make_graph(2 * n, edges)
        cert = ambiguity_certificate(g, n)
        assert cert.kind == CERT_TWO_DISJOINT
        for witness in (cert.witness_a, cert.witness_b):
            for e in g.sorted_edges():
                assert len(witness & set(e)) == 1

    def test_split_search_is_deterministic_lex_first(self):
        g = make_graph(4, [(0, 1), (2, 3)])
        split = balanced_crossing_split(g, 2)
        assert split.bottom == frozenset({0, 2})


class TestCoverLemmas:
    """The two cover lemmas, exhaustively at small scale with the exact solver."""

    def test_min_cover_at_most_edge_count_all_graphs_5_vertices(self):
        pairs = list(itertools.combinations(range(5), 2))
        for k in range(len(pairs) + 1):
            for es in itertools.combinations(pairs, k):
                g = make_graph(5, es)
                assert len(minimum_vertex_cover(g).cover) <= k
                assert len(cover_bound(g).cover) <= k

    def test_cover_equal_to_edges_forces_matching_5_vertices(self):
        pairs = list(itertools.combinations(range(5), 2))
        for k in range(1, len(pairs) + 1):
            for es in itertools.combinations(pairs, k):
                g = make_graph(5, es)
                if len(minimum_vertex_cover(g).cover) == k:
                    assert edges_form_matching(g), es
