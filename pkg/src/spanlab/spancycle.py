"""Reduction pipeline onto unit-weight spanning cycles.

Three normalization steps (rescale so the average MST edge weight is 1,
subdivide heavy MST edges, round light edges up to 1) followed by a tree-tour
step that turns the MST into an explicit Hamiltonian cycle of unit edges.
Every step preserves or increases the weighted girth and changes lightness by
at most a constant factor; the trace records the realized numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

from .errors import (
    DisconnectedError,
    InvalidChordError,
    IsForestError,
    ParseError,
    PreconditionViolatedError,
)
from .graph import (
    EdgeKey,
    WeightedGraph,
    _content_lines,
    _parse_edge_line,
    build_graph,
    format_rational,
    is_connected,
    minimum_spanning_tree,
    require_connected,
    scale_weights,
)


@dataclass(frozen=True)
class SpanningCycleGraph:
    """Graph whose Hamiltonian cycle 0-1-...-(n-1)-0 has weight-1 edges.

    Only the chords (non-cycle edges, each of weight >= 1) are stored; the
    cycle is implicit.  ``forward`` is the direction of increasing index.
    """

    node_count: int
    chords: tuple[EdgeKey, ...]

    def __post_init__(self):
        n = self.node_count
        if n < 3:
            raise InvalidChordError(f"spanning cycle needs >= 3 nodes, got {n}")
        seen = set()
        for e in self.chords:
            if not (0 <= e.lo < n and 0 <= e.hi < n):
                raise InvalidChordError(f"chord {e.pair}: id out of range [0, {n})")
            if e.lo == e.hi:
                raise InvalidChordError(f"chord {e.pair}: self-loop")
            if e.weight < 1:
                raise InvalidChordError(f"chord {e.pair}: weight {e.weight} < 1")
            if self.is_cycle_pair(e.lo, e.hi):
                raise InvalidChordError(f"chord {e.pair} duplicates a cycle edge")
            if e.pair in seen:
                raise InvalidChordError(f"duplicate chord {e.pair}")
            seen.add(e.pair)
        object.__setattr__(self, "chords", tuple(sorted(self.chords)))

    def is_cycle_pair(self, u: int, v: int) -> bool:
        n = self.node_count
        return (u - v) % n == 1 or (v - u) % n == 1

    def forward_of(self, u: int) -> int:
        return (u + 1) % self.node_count

    def backward_of(self, u: int) -> int:
        return (u - 1) % self.node_count

    @cached_property
    def chord_index(self) -> dict[tuple[int, int], EdgeKey]:
        return {e.pair: e for e in self.chords}

    @cached_property
    def chords_at(self) -> tuple[tuple[EdgeKey, ...], ...]:
        """Chords incident to each node, EdgeKey-ascending."""
        incident: list[list[EdgeKey]] = [[] for _ in range(self.node_count)]
        for e in self.chords:
            incident[e.lo].append(e)
            incident[e.hi].append(e)
        return tuple(tuple(sorted(x)) for x in incident)

    def chord_between(self, u: int, v: int) -> Optional[EdgeKey]:
        return self.chord_index.get((u, v) if u < v else (v, u))

    def chord_weight_total(self) -> Fraction:
        return sum((e.weight for e in self.chords), Fraction(0))

    def all_edges(self) -> tuple[EdgeKey, ...]:
        n = self.node_count
        cycle = [
            EdgeKey(Fraction(1), *((i, (i + 1) % n) if i < (i + 1) % n else ((i + 1) % n, i)))
            for i in range(n)
        ]
        return tuple(sorted(cycle + list(self.chords)))

    def max_edge_weight(self) -> Fraction:
        return max((e.weight for e in self.chords), default=Fraction(1))

    def to_graph(self) -> WeightedGraph:
        return WeightedGraph(self.node_count, self.all_edges())


def build_spanning_cycle_graph(
    n: int, chords: Iterable[tuple[int, int, Fraction | int | str]]
) -> SpanningCycleGraph:
    keys = []
    for u, v, w in chords:
        lo, hi = (u, v) if u < v else (v, u)
        keys.append(EdgeKey(Fraction(w), lo, hi))
    return SpanningCycleGraph(n, tuple(keys))


class GraphStats(NamedTuple):
    n: int
    mst_weight: Fraction
    lightness: Fraction
    weighted_girth: object | None  # Fraction, INFINITE, or None when skipped


def graph_stats(g: WeightedGraph, girth_limit: Optional[int] = None) -> GraphStats:
    mst_w = sum((e.weight for e in minimum_spanning_tree(g)), Fraction(0))
    light = g.total_weight() / mst_w if mst_w > 0 else Fraction(1)
    girth = None
    if girth_limit is not None and g.n <= girth_limit:
        from .girth import weighted_girth  # local import avoids a module cycle

        girth = weighted_girth(g, node_limit=girth_limit)[0]
    return GraphStats(g.n, mst_w, light, girth)


@dataclass
class ReductionTrace:
    """Bookkeeping for one reduction run.

    node_map sends every node of the reduced graph to the original node it
    copies; subdivision-internal nodes map to the lower endpoint of the edge
    they subdivide.  The map is surjective onto the original node set.
    """

    scale_factor: Fraction
    subdivisions: dict[tuple[int, int], int]
    node_map: dict[int, int]
    original_stats: GraphStats
    reduced_stats: GraphStats

    @property
    def lightness_ratio(self) -> Fraction:
        return self.reduced_stats.lightness / self.original_stats.lightness


def _require_non_forest(h: WeightedGraph) -> None:
    require_connected(h)
    if h.m <= h.n - 1:
        raise IsForestError("input has no cycle")


def normalize_unit_mst(
    h: WeightedGraph, girth_limit: Optional[int] = None
) -> tuple[WeightedGraph, ReductionTrace]:
    """Rescale, subdivide heavy MST edges, round light edges up to 1.

    Steps, in order: (1) rescale all weights so the average MST edge weight
    is exactly 1; (2) replace each MST edge of weight w > 1 by a path of
    ceil(w) edges of weight w/ceil(w); (3) raise every edge weight below 1 to
    exactly 1.  Afterwards every MST edge weighs exactly 1 and the node count
    is at most 2n - 1.
    """
    _require_non_forest(h)
    original_stats = graph_stats(h, girth_limit)

    mst = minimum_spanning_tree(h)
    mst_weight = sum((e.weight for e in mst), Fraction(0))
    scale = Fraction(h.n - 1) / mst_weight
    scaled = scale_weights(h, scale)
    mst_pairs = {e.pair for e in mst}

    next_node = h.n
    node_map = {v: v for v in range(h.n)}
    subdivisions: dict[tuple[int, int], int] = {}
    edges: list[tuple[int, int, Fraction]] = []
    for e in scaled.edges:
        if e.pair in mst_pairs and e.weight > 1:
            pieces = math.ceil(e.weight)
            piece_weight = e.weight / pieces
            subdivisions[e.pair] = pieces
            chain = [e.lo] + [next_node + i for i in range(pieces - 1)] + [e.hi]
            next_node += pieces - 1
            for a, b in zip(chain, chain[1:]):
                edges.append((a, b, piece_weight))
            for v in chain[1:-1]:
                node_map[v] = e.lo
        else:
            edges.append((e.lo, e.hi, e.weight))

    raised = [(u, v, max(w, Fraction(1))) for u, v, w in edges]
    out = build_graph(next_node, raised)
    trace = ReductionTrace(
        scale_factor=scale,
        subdivisions=subdivisions,
        node_map=node_map,
        original_stats=original_stats,
        reduced_stats=graph_stats(out, girth_limit),
    )
    return out, trace


def _mst_tour(h: WeightedGraph, mst_pairs: set[tuple[int, int]]) -> list[int]:
    """Closed tree walk from node 0, children ascending: every MST edge is
    used exactly twice with opposite orientations.  Returns the 2n-2 tour
    positions (the final return to the root is implicit)."""
    adj: dict[int, list[int]] = {v: [] for v in range(h.n)}
    for lo, hi in mst_pairs:
        adj[lo].append(hi)
        adj[hi].append(lo)
    for v in adj:
        adj[v].sort()
    tour: list[int] = []

    # iterative DFS; the explicit stack mirrors the recursion (node, iterator)
    stack: list[tuple[int, int, iter]] = [(0, -1, iter(adj[0]))]
    tour.append(0)
    while stack:
        node, parent, it = stack[-1]
        child = next((c for c in it if c != parent), None)
        if child is None:
            stack.pop()
            if stack:
                tour.append(stack[-1][0])
        else:
            tour.append(child)
            stack.append((child, node, iter(adj[child])))
    # the loop appends the root once per returning child plus leaves; the
    # closed walk has 2n-1 entries with first == last, so drop the last
    assert tour[0] == tour[-1] and len(tour) == 2 * h.n - 1
    return tour[:-1]


def to_spanning_cycle(
    h: WeightedGraph, girth_limit: Optional[int] = None
) -> tuple[SpanningCycleGraph, ReductionTrace]:
    """Map an MST tour onto an explicit unit-weight spanning cycle.

    Requires a connected input whose MST is all-unit and whose every edge
    weighs at least 1.  The tour of the n-node MST has exactly 2n-2 nodes,
    which become the cycle; each non-MST edge becomes a single chord attached
    to the first tour occurrence of each endpoint (a fixed, deterministic
    choice among the copies).
    """
    require_connected(h)
    if h.n < 3:
        raise PreconditionViolatedError(f"need >= 3 nodes for a spanning cycle, got {h.n}")
    mst = minimum_spanning_tree(h)
    for e in mst:
        if e.weight != 1:
            raise PreconditionViolatedError(f"MST edge {e.pair} has weight {e.weight} != 1")
    light = [e for e in h.edges if e.weight < 1]
    if light:
        raise PreconditionViolatedError(f"edge {light[0].pair} has weight {light[0].weight} < 1")

    original_stats = graph_stats(h, girth_limit)
    mst_pairs = {e.pair for e in mst}
    tour = _mst_tour(h, mst_pairs)
    first_pos: dict[int, int] = {}
    for pos, node in enumerate(tour):
        first_pos.setdefault(node, pos)

    chords = [
        (first_pos[e.lo], first_pos[e.hi], e.weight)
        for e in h.edges
        if e.pair not in mst_pairs
    ]
    scg = build_spanning_cycle_graph(len(tour), chords)
    trace = ReductionTrace(
        scale_factor=Fraction(1),
        subdivisions={},
        node_map={pos: node for pos, node in enumerate(tour)},
        original_stats=original_stats,
        reduced_stats=graph_stats(scg.to_graph(), girth_limit),
    )
    return scg, trace


def full_reduction(
    h: WeightedGraph, girth_limit: Optional[int] = None
) -> tuple[SpanningCycleGraph, ReductionTrace]:
    """normalize_unit_mst followed by to_spanning_cycle, traces composed.

    The reduced instance has at most 4n - 2 nodes and weighted girth at least
    that of the input.
    """
    normalized, trace1 = normalize_unit_mst(h, girth_limit)
    scg, trace2 = to_spanning_cycle(normalized, girth_limit)
    node_map = {pos: trace1.node_map[mid] for pos, mid in trace2.node_map.items()}
    trace = ReductionTrace(
        scale_factor=trace1.scale_factor,
        subdivisions=trace1.subdivisions,
        node_map=node_map,
        original_stats=trace1.original_stats,
        reduced_stats=trace2.reduced_stats,
    )
    return scg, trace


# ---------------------------------------------------------------------------
# text format:  "n c" header, then c chord lines "u v w"; cycle implicit


def serialize_scg(scg: SpanningCycleGraph) -> str:
    lines = [f"{scg.node_count} {len(scg.chords)}"]
    lines.extend(f"{e.lo} {e.hi} {format_rational(e.weight)}" for e in scg.chords)
    return "\n".join(lines) + "\n"


def parse_scg(text: str) -> SpanningCycleGraph:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", line=1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"expected header 'n c', got {header!r}", line=lineno)
    try:
        n, c = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"bad header {header!r}", line=lineno) from None
    body = lines[1:]
    if len(body) != c:
        raise ParseError(f"expected {c} chord lines, found {len(body)}", line=lineno)
    chords = []
    for lineno, line in body:
        chords.append(_parse_edge_line(lineno, line))
    try:
        return build_spanning_cycle_graph(n, chords)
    except InvalidChordError as exc:
        raise ParseError(str(exc)) from None
