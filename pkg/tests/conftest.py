"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately do not reuse the package's algorithms: spanning
trees are enumerated from scratch, cycles come from networkx, and safe paths
are found by exhaustive walk generation plus the classifier.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest

from spanlab import build_graph, build_spanning_cycle_graph
from spanlab.graph import WeightedGraph


@pytest.fixture
def unit_triangle():
    return build_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


@pytest.fixture
def unit_cycle5():
    return build_graph(5, [(i, (i + 1) % 5, 1) for i in range(5)])


@pytest.fixture
def petersen():
    from spanlab.generators import petersen_graph

    return petersen_graph()


@pytest.fixture
def k4_weighted():
    return build_graph(
        4, [(0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 4), (1, 3, 5), (2, 3, 6)]
    )


# ---------------------------------------------------------------------------
# oracles


def brute_force_mst_weight(g: WeightedGraph) -> Fraction:
    """Minimum spanning-tree weight by enumerating all edge subsets of size
    n-1 and keeping the spanning ones.  Exponential; tiny graphs only."""
    best = None
    for subset in itertools.combinations(g.edges, g.n - 1):
        nxg = nx.Graph()
        nxg.add_nodes_from(range(g.n))
        nxg.add_edges_from((e.lo, e.hi) for e in subset)
        if nx.is_connected(nxg):
            weight = sum((e.weight for e in subset), Fraction(0))
            if best is None or weight < best:
                best = weight
    assert best is not None, "graph is disconnected"
    return best


def all_simple_cycles(g: WeightedGraph) -> list[list[int]]:
    """Every simple cycle as a node list, via networkx."""
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from((e.lo, e.hi) for e in g.edges)
    return [c for c in nx.simple_cycles(nxg)]


def brute_force_weighted_girth(g: WeightedGraph):
    """Minimum normalized cycle weight via exhaustive networkx cycles."""
    best = None
    for cycle in all_simple_cycles(g):
        total = Fraction(0)
        heaviest = Fraction(0)
        for i, u in enumerate(cycle):
            v = cycle[(i + 1) % len(cycle)]
            w = g.weight_of(u, v)
            total += w
            heaviest = max(heaviest, w)
        value = total / heaviest
        if best is None or value < best:
            best = value
    return best  # None when acyclic


def random_connected_graph(rng: random.Random, n: int, extra_edges: int, weights):
    """Random spanning tree plus extra random edges; weights drawn from the
    given sequence.  Independent of the package generators."""
    edges = {}
    nodes = list(range(n))
    rng.shuffle(nodes)
    for i in range(1, n):
        u = nodes[i]
        v = nodes[rng.randrange(i)]
        edges[(min(u, v), max(u, v))] = Fraction(rng.choice(weights))
    candidates = [
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges
    ]
    rng.shuffle(candidates)
    for u, v in candidates[:extra_edges]:
        edges[(u, v)] = Fraction(rng.choice(weights))
    return build_graph(n, [(u, v, w) for (u, v), w in edges.items()])


def all_walks_up_to(scg, max_len: int):
    """Every walk (as a Step tuple) of length 1..max_len from every start.

    Exhaustive oracle for the safe-path enumerators; exponential in max_len.
    """
    from spanlab.paths import Step, backward_step, chord_step, forward_step

    walks = []

    def moves(at):
        out = [forward_step(scg, at), backward_step(scg, at)]
        for chord in scg.chords_at[at]:
            other = chord.hi if at == chord.lo else chord.lo
            out.append(Step("C", at, other, chord))
        return out

    def extend(steps, at, depth):
        if depth == 0:
            return
        for step in moves(at):
            walks.append(tuple(steps + [step]))
            extend(steps + [step], step.to, depth - 1)

    for start in range(scg.node_count):
        extend([], start, max_len)
    return walks
