import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spanlab import build_graph, minimum_spanning_tree, parse_graph, serialize_graph
from spanlab.errors import (
    DuplicateEdgeError,
    IdOutOfRangeError,
    NonPositiveWeightError,
    ParseError,
    SelfLoopError,
)
from spanlab.graph import (
    EdgeKey,
    WeightedGraph,
    parse_rational,
    shortest_path_distance,
    single_source_distances,
)

from conftest import brute_force_mst_weight, random_connected_graph


class TestBuildGraph:
    def test_unit_triangle(self, unit_triangle):
        assert unit_triangle.n == 3
        assert unit_triangle.m == 3
        assert unit_triangle.weight_of(2, 0) == 1

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoopError, match=r"\(0, 0"):
            build_graph(2, [(0, 0, 1)])

    def test_duplicate_rejected(self):
        with pytest.raises(DuplicateEdgeError, match=r"\(0, 1"):
            build_graph(4, [(0, 1, Fraction(1, 2)), (0, 1, 1)])

    def test_duplicate_rejected_reversed_pair(self):
        with pytest.raises(DuplicateEdgeError):
            build_graph(4, [(0, 1, 1), (1, 0, 2)])

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(NonPositiveWeightError):
            build_graph(2, [(0, 1, 0)])

    def test_id_out_of_range(self):
        with pytest.raises(IdOutOfRangeError):
            build_graph(2, [(0, 2, 1)])

    def test_edges_stored_sorted_by_edge_key(self):
        g = build_graph(3, [(1, 2, 3), (0, 2, Fraction(1, 2)), (0, 1, 3)])
        assert g.edges == (
            EdgeKey(Fraction(1, 2), 0, 2),
            EdgeKey(Fraction(3), 0, 1),
            EdgeKey(Fraction(3), 1, 2),
        )


class TestShortestPath:
    def test_triangle(self, unit_triangle):
        assert shortest_path_distance(unit_triangle, 0, 2) == 1

    def test_triangle_minus_edge(self):
        g = build_graph(3, [(0, 1, 1), (1, 2, 1)])
        assert shortest_path_distance(g, 0, 2) == 2

    def test_exact_rational_sum(self):
        g = build_graph(3, [(0, 1, Fraction(1, 3)), (1, 2, Fraction(2, 3))])
        assert shortest_path_distance(g, 0, 2) == 1  # exactly, no rounding

    def test_unreachable(self):
        g = build_graph(4, [(0, 1, 1)])
        assert shortest_path_distance(g, 0, 3) is None

    def test_out_of_range(self, unit_triangle):
        with pytest.raises(IdOutOfRangeError):
            shortest_path_distance(unit_triangle, 0, 5)

    def test_cutoff_agrees_when_within(self):
        rng = random.Random(7)
        for _ in range(20):
            g = random_connected_graph(rng, 8, 6, [1, Fraction(3, 2), 2])
            for u in range(g.n):
                exact = single_source_distances(g, u)
                for v in range(g.n):
                    if u == v:
                        continue
                    d = exact[v]
                    # cutoff exactly at the distance must return it
                    assert shortest_path_distance(g, u, v, cutoff=d) == d
                    # cutoff strictly below must report unreachable
                    below = d - Fraction(1, 1000)
                    assert shortest_path_distance(g, u, v, cutoff=below) is None

    def test_triangle_inequality_and_symmetry_exhaustive_small(self):
        rng = random.Random(11)
        for _ in range(15):
            g = random_connected_graph(rng, 8, 8, [1, Fraction(3, 2), 2])
            dist = [single_source_distances(g, u) for u in range(g.n)]
            for u in range(g.n):
                for v in range(g.n):
                    assert dist[u][v] == dist[v][u]
                    for w in range(g.n):
                        assert dist[u][w] <= dist[u][v] + dist[v][w]


class TestMST:
    def test_unit_triangle_tiebreak(self, unit_triangle):
        mst = minimum_spanning_tree(unit_triangle)
        assert {e.pair for e in mst} == {(0, 1), (0, 2)}

    def test_tree_input_keeps_all_edges(self):
        g = build_graph(4, [(0, 1, 5), (1, 2, 1), (1, 3, 7)])
        assert set(minimum_spanning_tree(g)) == set(g.edges)

    def test_k4_against_brute_force(self, k4_weighted):
        # oracle: enumerate all C(6,3)=20 subsets, keep spanning trees
        expected_weight = brute_force_mst_weight(k4_weighted)
        assert expected_weight == 6
        mst = minimum_spanning_tree(k4_weighted)
        assert {e.pair for e in mst} == {(0, 1), (0, 2), (0, 3)}
        assert sum(e.weight for e in mst) == expected_weight

    def test_weight_matches_brute_force_random(self):
        rng = random.Random(3)
        for _ in range(15):
            g = random_connected_graph(rng, 6, 4, [1, 2, 3, Fraction(5, 2)])
            mst = minimum_spanning_tree(g)
            assert sum((e.weight for e in mst), Fraction(0)) == brute_force_mst_weight(g)

    def test_forest_on_disconnected(self):
        g = build_graph(5, [(0, 1, 1), (2, 3, 1), (3, 4, 1), (2, 4, 2)])
        mst = minimum_spanning_tree(g)
        assert len(mst) == g.n - 2  # two components

    @given(st.randoms(use_true_random=False))
    def test_permutation_invariance(self, rnd):
        base = [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, Fraction(3, 2)), (0, 3, Fraction(3, 2))]
        shuffled = list(base)
        rnd.shuffle(shuffled)
        assert minimum_spanning_tree(build_graph(4, base)) == minimum_spanning_tree(
            build_graph(4, shuffled)
        )


class TestRationalArithmetic:
    @settings(max_examples=1000, deadline=None)
    @given(st.fractions(), st.fractions(), st.fractions())
    def test_associativity_exact(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @settings(max_examples=1000, deadline=None)
    @given(st.fractions(), st.fractions())
    def test_division_inverts_multiplication(self, a, b):
        if b != 0:
            assert a / b * b == a

    def test_parse_rational_forms(self):
        assert parse_rational("3") == 3
        assert parse_rational("1.5") == Fraction(3, 2)
        assert parse_rational("3/2") == Fraction(3, 2)
        with pytest.raises(ValueError):
            parse_rational("x")


class TestTextFormat:
    def test_parse_triangle(self, unit_triangle):
        assert parse_graph("3 3\n0 1 1\n1 2 1\n0 2 1\n") == unit_triangle

    def test_fractional_weight_exact(self):
        g = parse_graph("2 1\n0 1 3/2\n")
        assert g.weight_of(0, 1) == Fraction(3, 2)

    def test_decimal_weight_exact(self):
        g = parse_graph("2 1\n0 1 1.5\n")
        assert g.weight_of(0, 1) == Fraction(3, 2)

    def test_nonpositive_weight_is_parse_error(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_graph("2 1\n0 1 0\n")

    def test_line_numbers_skip_comments(self):
        with pytest.raises(ParseError, match="line 4"):
            parse_graph("2 1\n# comment\n\n0 1 junk\n")

    def test_comments_and_blank_lines_ignored(self, unit_triangle):
        text = "# header\n3 3\n\n0 1 1\n# middle\n1 2 1\n0 2 1\n"
        assert parse_graph(text) == unit_triangle

    def test_wrong_edge_count(self):
        with pytest.raises(ParseError):
            parse_graph("3 2\n0 1 1\n")

    def test_round_trip_fixed(self, k4_weighted):
        assert parse_graph(serialize_graph(k4_weighted)) == k4_weighted

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 30))
    def test_round_trip_random(self, seed):
        rng = random.Random(seed)
        g = random_connected_graph(
            rng, rng.randint(2, 9), rng.randint(0, 6), [1, Fraction(3, 2), 2, Fraction(7, 3)]
        )
        assert parse_graph(serialize_graph(g)) == g

    def test_output_ends_with_lf(self, unit_triangle):
        text = serialize_graph(unit_triangle)
        assert text.endswith("\n") and "\r" not in text
