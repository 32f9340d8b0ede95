import random
from fractions import Fraction

import pytest

from spanlab import build_graph, greedy_spanner, minimum_spanning_tree, verify_stretch
from spanlab.errors import InvalidStretchError, NotSubgraphError

from conftest import random_connected_graph


class TestGreedy:
    def test_unit_triangle_t3(self, unit_triangle):
        result = greedy_spanner(unit_triangle, 3)
        assert result.spanner.m == 2  # third edge sees distance 2 <= 3
        assert len(result.rejected) == 1

    def test_tree_keeps_everything(self):
        g = build_graph(5, [(0, 1, 3), (1, 2, 1), (1, 3, 9), (3, 4, Fraction(1, 2))])
        assert greedy_spanner(g, 1).spanner == g
        assert greedy_spanner(g, 100).spanner == g

    def test_unit_5cycle(self, unit_cycle5):
        assert greedy_spanner(unit_cycle5, 3).spanner.m == 5  # last edge: 4 > 3
        assert greedy_spanner(unit_cycle5, 4).spanner.m == 4  # last edge: 4 <= 4

    def test_invalid_stretch(self, unit_triangle):
        with pytest.raises(InvalidStretchError):
            greedy_spanner(unit_triangle, Fraction(1, 2))

    def test_transcript_partition(self, k4_weighted):
        result = greedy_spanner(k4_weighted, 2)
        assert set(result.added_order) | set(result.rejected) == set(k4_weighted.edges)
        assert set(result.added_order) & set(result.rejected) == set()

    def test_scan_order_monotone(self, k4_weighted):
        result = greedy_spanner(k4_weighted, 2)
        assert list(result.added_order) == sorted(result.added_order)

    def test_exact_boundary_not_added(self):
        # distance exactly t*w must reject the edge
        g = build_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 2)])
        result = greedy_spanner(g, 1)
        assert (0, 2) not in {e.pair for e in result.spanner.edges}


class TestVerifyStretch:
    def test_greedy_output_passes(self, unit_triangle):
        result = greedy_spanner(unit_triangle, 3)
        assert verify_stretch(unit_triangle, result.spanner, 3) == []

    def test_path_tree_violates_t1(self, unit_triangle):
        h = build_graph(3, [(0, 1, 1), (1, 2, 1)])
        violations = verify_stretch(unit_triangle, h, 1)
        assert len(violations) == 1
        v = violations[0]
        assert (v.u, v.v) == (0, 2)
        assert v.dist_h == 2 and v.dist_g == 1

    def test_not_subgraph(self, unit_triangle):
        other = build_graph(3, [(0, 1, 2)])
        with pytest.raises(NotSubgraphError):
            verify_stretch(unit_triangle, other, 1)

    def test_subgraph_weight_must_match(self, unit_triangle):
        reweighted = build_graph(3, [(0, 1, Fraction(1, 2))])
        with pytest.raises(NotSubgraphError):
            verify_stretch(unit_triangle, reweighted, 1)


class TestGreedyCorrectnessProperty:
    def test_random_graphs_n50(self):
        # greedy output always verifies, contains the MST, and scans in order
        rng = random.Random(2024)
        for trial in range(100):
            g = random_connected_graph(rng, 50, 60, [1, 2, 3, 5, Fraction(7, 2)])
            t = rng.choice([Fraction(3, 2), 2, 3])
            result = greedy_spanner(g, t)
            assert verify_stretch(g, result.spanner, t) == []
            assert set(minimum_spanning_tree(g)) <= set(result.spanner.edges)

    def test_small_exhaustive_stretches(self):
        rng = random.Random(5)
        for _ in range(40):
            g = random_connected_graph(rng, 8, 8, [1, Fraction(3, 2), 2])
            for t in (1, 2, 3):
                result = greedy_spanner(g, t)
                assert verify_stretch(g, result.spanner, t) == []
                assert set(minimum_spanning_tree(g)) <= set(result.spanner.edges)
