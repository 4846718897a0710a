"""
Tests for oriented digraphs, positive distances, neighborhoods and Seymour statistics.
"""

import math
from fractions import Fraction
from itertools import combinations
from unittest.mock import patch

import pytest
from hypothesis import given, settings, strategies as st

from seymour_verifier.digraph import (
    OrientedDigraph, best_seymour_ratio, degree_minimizer, edge_count, is_seymour,
    neighborhoods, out_neighbors_of_set, partition_counts, positive_distances,
    vertex_stats_frame, weighted_minimizer,
)
from seymour_verifier.errors import (
    DigraphError, EmptyNeighborhoodError, PartitionError, PreconditionError,
)
from seymour_verifier.generators import cycle_power, random_tournament


@st.composite
def small_digraphs(draw, max_n=7):
    """Any oriented digraph on at most max_n vertices: each pair is absent, i->j or j->i."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    choices = draw(st.lists(st.integers(0, 2), min_size=len(pairs), max_size=len(pairs)))
    arcs = [(i, j) if c == 1 else (j, i) for (i, j), c in zip(pairs, choices) if c]
    return OrientedDigraph.from_arcs(n, arcs)


def walk_distances(D, u):
    """Shortest walk of length >= 1 from u to each vertex, by brute-force layer expansion."""
    dist = [math.inf] * D.n
    frontier = {u}
    for length in range(1, D.n + 1):
        frontier = {y for z in frontier for y in D.out_adj[z]}
        for y in frontier:
            if dist[y] == math.inf:
                dist[y] = length
    return dist


class TestOrientedDigraph:
    """Construction and validation."""

    def test_from_arcs_sorts_adjacency(self):
        D = OrientedDigraph.from_arcs(3, [(0, 2), (0, 1), (1, 2)])
        assert D.out_adj == ((1, 2), (2,), ())
        assert D.in_adj == ((), (0,), (0, 1))
        assert D.arc_count == 3
        assert list(D.arcs()) == [(0, 1), (0, 2), (1, 2)]

    @pytest.mark.parametrize("arcs, message", [
        ([(0, 0)], "loop"),
        ([(0, 1), (1, 0)], "digon"),
        ([(0, 1), (0, 1)], "duplicate"),
        ([(0, 3)], "out of range"),
    ])
    def test_rejects_invalid_arcs(self, arcs, message):
        with pytest.raises(DigraphError, match=message):
            OrientedDigraph.from_arcs(3, arcs)

    def test_rejects_digon_in_direct_construction(self):
        with pytest.raises(DigraphError):
            OrientedDigraph(2, ((1,), (0,)))

    def test_min_out_degree(self):
        assert cycle_power(7, 2).min_out_degree() == 2
        assert OrientedDigraph.from_arcs(2, [(0, 1)]).min_out_degree() == 0


class TestDistances:
    """Positive distances and neighborhoods."""

    def test_triangle(self):
        dist = positive_distances(cycle_power(3, 1), 0)
        assert dist == [3, 1, 2]

    def test_five_cycle(self):
        assert positive_distances(cycle_power(5, 1), 0) == [5, 1, 2, 3, 4]

    def test_isolated_vertices(self):
        dist = positive_distances(OrientedDigraph(2, ((), ())), 0)
        assert dist == [math.inf, math.inf]

    def test_vertex_out_of_range(self):
        with pytest.raises(PreconditionError):
            positive_distances(cycle_power(3, 1), 3)

    def test_triangle_neighborhoods(self):
        nb = neighborhoods(cycle_power(3, 1), 0)
        assert nb.first == {1}
        assert nb.second == {2}
        assert nb.third == {0}

    def test_square_of_seven_cycle(self):
        nb = neighborhoods(cycle_power(7, 2), 0)
        assert (nb.stats.d1, nb.stats.d2, nb.stats.d3) == (2, 2, 2)
        assert nb.third == {5, 6}

    def test_single_arc(self):
        nb = neighborhoods(OrientedDigraph.from_arcs(2, [(0, 1)]), 0)
        assert nb.first == {1}
        assert not nb.second and not nb.third

    @settings(max_examples=150, deadline=None)
    @given(small_digraphs())
    def test_matches_walk_oracle(self, D):
        for u in range(D.n):
            dist = positive_distances(D, u)
            assert dist == walk_distances(D, u)
            if dist[u] != math.inf:
                assert dist[u] >= 3

    @settings(max_examples=100, deadline=None)
    @given(small_digraphs())
    def test_neighborhoods_are_disjoint(self, D):
        for u in range(D.n):
            nb = neighborhoods(D, u)
            assert not (nb.first & nb.second)
            assert not (nb.first & nb.third)
            assert not (nb.second & nb.third)
            assert u not in nb.first | nb.second
            assert nb.stats.d1 <= D.n - 1 and nb.stats.d2 <= D.n - 1


class TestSeymourStatistics:
    """Seymour predicates, ratios and the two minimizers."""

    def test_is_seymour(self):
        assert is_seymour(cycle_power(3, 1), 0, 1)
        star = OrientedDigraph.from_arcs(3, [(0, 1), (0, 2)])
        assert not is_seymour(star, 0, Fraction(1, 2))
        assert is_seymour(star, 1, 100)

    def test_negative_mu_rejected(self):
        with pytest.raises(PreconditionError):
            is_seymour(cycle_power(3, 1), 0, -1)

    @pytest.mark.parametrize("n, k", [(5, 1), (5, 2), (7, 2), (9, 2), (9, 3), (11, 4)])
    def test_cycle_powers_have_ratio_one(self, n, k):
        assert best_seymour_ratio(cycle_power(n, k)) == (0, Fraction(1))

    def test_sink_has_infinite_ratio(self):
        vertex, ratio = best_seymour_ratio(OrientedDigraph.from_arcs(3, [(0, 1), (1, 2)]))
        assert vertex == 2
        assert ratio == math.inf

    def test_tournament_has_one_seymour_vertex(self):
        _, ratio = best_seymour_ratio(random_tournament(15, 2024))
        assert ratio >= 1

    def test_degree_minimizer(self):
        assert degree_minimizer(OrientedDigraph.from_arcs(3, [(0, 1), (1, 2)])) == 2
        assert degree_minimizer(cycle_power(5, 1)) == 0
        assert degree_minimizer(cycle_power(3, 1)) == 0

    def test_weighted_minimizer_only_candidate(self):
        assert weighted_minimizer(cycle_power(5, 1), 0, 1) == 1

    def test_weighted_minimizer_scores(self, arc_digraph):
        # scores: v=1 -> 2w (arc 1->2 inside N+(0)), v=2 -> 1 (arc 2->3 into N++(0))
        assert weighted_minimizer(arc_digraph, 0, 2) == 2
        # w = 1 ties at score 1; smallest index wins
        assert weighted_minimizer(arc_digraph, 0, 1) == 1

    def test_weighted_minimizer_errors(self, arc_digraph):
        with pytest.raises(EmptyNeighborhoodError):
            weighted_minimizer(arc_digraph, 3, 1)
        with pytest.raises(PreconditionError):
            weighted_minimizer(arc_digraph, 0, Fraction(1, 2))


class TestPartitionCounts:
    """The cells X_ij around an arc (u, v)."""

    def test_five_cycle(self):
        counts = partition_counts(cycle_power(5, 1), 0, 1).as_dict()
        assert {k: v for k, v in counts.items() if v} == {'x14': 1, 'x21': 1, 'x32': 1}

    def test_triangle(self):
        counts = partition_counts(cycle_power(3, 1), 0, 1).as_dict()
        assert {k: v for k, v in counts.items() if v} == {'x13': 1, 'x21': 1, 'x32': 1}

    def test_single_arc(self):
        counts = partition_counts(OrientedDigraph.from_arcs(2, [(0, 1)]), 0, 1).as_dict()
        assert {k: v for k, v in counts.items() if v} == {'x14': 1}

    def test_requires_an_arc(self):
        with pytest.raises(PreconditionError):
            partition_counts(cycle_power(5, 1), 0, 2)

    def test_x31_violation_raises(self):
        # y=2 placed in N+++(0) while still an out-neighbor of 1
        fake = {0: [3, 1, 3], 1: [2, 3, 1]}
        with patch('seymour_verifier.digraph.positive_distances', side_effect=lambda D, u: fake[u]):
            with pytest.raises(PartitionError, match="out-neighbors of 1"):
                partition_counts(cycle_power(3, 1), 0, 1)

    @settings(max_examples=100, deadline=None)
    @given(small_digraphs())
    def test_cells_partition_the_neighborhoods(self, D):
        for u, v in D.arcs():
            counts = partition_counts(D, u, v)
            stats = neighborhoods(D, u).stats
            at_v = neighborhoods(D, v).stats
            assert counts.x31 == 0
            assert counts.x11 + counts.x12 + counts.x13 + counts.x14 == stats.d1
            assert counts.x21 + counts.x22 + counts.x23 + counts.x24 == stats.d2
            assert counts.x32 + counts.x33 + counts.x34 == stats.d3
            assert counts.x11 + counts.x21 == at_v.d1
            assert counts.x12 + counts.x22 + counts.x32 == at_v.d2


class TestSetOperations:
    """Arc counts between sets and set out-neighborhoods."""

    def test_edge_count(self):
        c3, c5 = cycle_power(3, 1), cycle_power(5, 1)
        assert edge_count(c3, {0}, {1}) == 1
        assert edge_count(c3, range(3), range(3)) == 3
        assert edge_count(c5, {0, 1}, {2, 3}) == 1

    def test_out_neighbors_of_set(self):
        c5 = cycle_power(5, 1)
        assert out_neighbors_of_set(c5, {0, 1}) == {2}
        assert out_neighbors_of_set(c5, set()) == frozenset()
        assert out_neighbors_of_set(c5, range(5)) == frozenset()

    def test_vertex_stats_frame(self):
        frame = vertex_stats_frame(cycle_power(7, 2))
        assert list(frame.columns) == ['vertex', 'd1', 'd2', 'd3', 'ratio', 'ratio_float']
        assert len(frame) == 7
        assert set(frame['ratio']) == {'1'}
