"""Girth, normalized cycle weight, weighted girth, and lightness.

The weighted girth of a graph is the minimum over all simple cycles C of
w(C) / max_edge_weight(C).  It is computed here by exhaustive simple-cycle
enumeration with pruning, guarded by a node limit: this toolkit only ever
needs it as a certificate at desk scale, never algorithmically.

Infinite girth (acyclic graph) is the explicit ``INFINITE`` value, which
compares greater than every number; it is never a sentinel float.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Optional, Sequence, Union

from .errors import (
    DisconnectedError,
    MissingEdgeError,
    NotACycleError,
    NotSubgraphError,
    TooLargeError,
)
from .graph import (
    WeightedGraph,
    is_connected,
    is_edge_subgraph,
    minimum_spanning_tree,
)
from .report import FAIL, PASS, LemmaReport
from .spanner import greedy_spanner

if TYPE_CHECKING:  # pragma: no cover
    from .spancycle import SpanningCycleGraph


class _InfiniteGirth:
    """Order-maximal girth value; strictly greater than every number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __gt__(self, other):
        return not isinstance(other, _InfiniteGirth)

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _InfiniteGirth)

    def __eq__(self, other):
        return isinstance(other, _InfiniteGirth)

    def __hash__(self):
        return hash("spanlab-infinite-girth")

    def __repr__(self):
        return "INFINITE"


INFINITE = _InfiniteGirth()

GirthValue = Union[Fraction, _InfiniteGirth]

DEFAULT_NODE_LIMIT = 12


@dataclass(frozen=True)
class CycleWitness:
    """A simple cycle together with its exact weight statistics."""

    cycle: tuple[int, ...]
    total_weight: Fraction
    max_edge_weight: Fraction
    normalized_weight: Fraction


def normalized_cycle_weight(g: WeightedGraph, cycle: Sequence[int]) -> CycleWitness:
    """Exact normalized weight of a simple cycle given as a node sequence.

    The sequence lists each cycle node once; the closing edge back to the
    first node is implicit.
    """
    nodes = tuple(cycle)
    if len(nodes) < 3:
        raise NotACycleError(f"cycle needs >= 3 nodes, got {len(nodes)}")
    if len(set(nodes)) != len(nodes):
        raise NotACycleError(f"repeated node in cycle {nodes}")
    total = Fraction(0)
    heaviest = Fraction(0)
    for i, u in enumerate(nodes):
        v = nodes[(i + 1) % len(nodes)]
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise MissingEdgeError(f"cycle edge ({u}, {v}) not in graph")
        w = g.weight_of(u, v)
        total += w
        heaviest = max(heaviest, w)
    return CycleWitness(nodes, total, heaviest, total / heaviest)


def _canonical_cycle(nodes: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate to start at the minimum node, direction with smaller successor."""
    k = nodes.index(min(nodes))
    rotated = nodes[k:] + nodes[:k]
    alt = (rotated[0],) + tuple(reversed(rotated[1:]))
    return min(rotated, alt)


def weighted_girth(
    g: WeightedGraph, node_limit: int = DEFAULT_NODE_LIMIT
) -> tuple[GirthValue, Optional[CycleWitness]]:
    """Minimum normalized cycle weight over all simple cycles, with witness.

    Brute-force cycle enumeration (exponential); refuses graphs larger than
    ``node_limit``.  Returns (INFINITE, None) for forests.  Deterministic:
    on ties the canonical-lexicographically smallest witness cycle wins.
    """
    if g.n > node_limit:
        raise TooLargeError(f"{g.n} nodes exceeds node_limit={node_limit}")
    if not g.edges:
        return INFINITE, None
    w_max_global = max(e.weight for e in g.edges)
    adj = g.adjacency
    best: GirthValue = INFINITE
    best_witness: Optional[CycleWitness] = None

    def consider(path: tuple[int, ...]) -> None:
        nonlocal best, best_witness
        witness = normalized_cycle_weight(g, path)
        value = witness.normalized_weight
        if best_witness is None or value < best:
            best, best_witness = value, witness
        elif value == best and _canonical_cycle(path) < _canonical_cycle(best_witness.cycle):
            best_witness = witness

    # Roots ascending; each cycle is found rooted at its minimum node, in the
    # direction whose second node is smaller than its last, so each simple
    # cycle is visited exactly once.
    for root in range(g.n):
        stack: list[tuple[int, tuple[int, ...], Fraction, Fraction]] = [
            (root, (root,), Fraction(0), Fraction(0))
        ]
        while stack:
            node, path, total, heaviest = stack.pop()
            for nbr, w in adj[node]:
                if nbr == root and len(path) >= 3 and path[1] < path[-1]:
                    consider(path)
                    continue
                if nbr <= root or nbr in path:
                    continue
                new_total = total + w
                # lower bound on any completion: total weight only grows and
                # the heaviest edge is capped by the global maximum
                if best_witness is not None and new_total / w_max_global >= best:
                    continue
                stack.append((nbr, path + (nbr,), new_total, max(heaviest, w)))
    return best, best_witness


def unweighted_girth(g: WeightedGraph) -> Union[int, _InfiniteGirth]:
    """Length of the shortest cycle, ignoring weights.  BFS from every node."""
    adj = g.adjacency
    best: Union[int, _InfiniteGirth] = INFINITE
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, _ in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif v != parent[u]:
                    candidate = dist[u] + dist[v] + 1
                    if best > candidate:
                        best = candidate
    return best


def lightness(h: WeightedGraph, g: WeightedGraph) -> Fraction:
    """Total weight of h divided by the MST weight of g (both exact).

    For the self-lightness of a graph, pass it as both arguments.
    """
    if not is_connected(g):
        raise DisconnectedError("lightness needs a connected reference graph")
    if not is_edge_subgraph(h, g):
        raise NotSubgraphError("h is not an edge-subgraph of g")
    mst_weight = sum((e.weight for e in minimum_spanning_tree(g)), Fraction(0))
    return h.total_weight() / mst_weight


def certify_greedy_girth(
    g: WeightedGraph, t: Fraction | int | str, node_limit: int = DEFAULT_NODE_LIMIT
) -> LemmaReport:
    """Check that the greedy spanner's weighted girth exceeds t + 1 exactly."""
    t = Fraction(t)
    result = greedy_spanner(g, t)
    girth, witness = weighted_girth(result.spanner, node_limit=node_limit)
    threshold = t + 1
    ok = girth > threshold
    counts = {
        "t": t,
        "threshold": threshold,
        "weighted_girth": girth,
        "spanner_edges": result.spanner.m,
    }
    witnesses = ()
    if not ok and witness is not None:
        witnesses = (
            {
                "cycle": list(witness.cycle),
                "normalized_weight": witness.normalized_weight,
            },
        )
    return LemmaReport(
        lemma="greedy-girth",
        instance=f"n={g.n} m={g.m} t={t}",
        verdict=PASS if ok else FAIL,
        counts=counts,
        witnesses=witnesses,
    )


def check_max_weight_bound(scg: "SpanningCycleGraph", t: Fraction | int | str) -> LemmaReport:
    """Check every edge weight against n / (2(t-1)).

    Sanity gate for reduced instances whose weighted girth is claimed > t:
    in that regime no edge may weigh n / (2(t-1)) or more.
    """
    t = Fraction(t)
    if t <= 1:
        raise ValueError(f"threshold needs t > 1, got {t}")
    n = scg.node_count
    bound = Fraction(n, 1) / (2 * (t - 1))
    offenders = [
        {"edge": [e.lo, e.hi], "weight": e.weight}
        for e in scg.all_edges()
        if e.weight >= bound
    ]
    return LemmaReport(
        lemma="max-weight-bound",
        instance=f"n={n} chords={len(scg.chords)} t={t}",
        verdict=PASS if not offenders else FAIL,
        counts={"t": t, "bound": bound, "max_edge_weight": scg.max_edge_weight()},
        witnesses=tuple(offenders),
    )
