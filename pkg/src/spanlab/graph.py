"""Exact-arithmetic weighted graphs: construction, shortest paths, MST, text I/O.

Every weight in this package is a ``fractions.Fraction``, so all comparisons
(spanner stretch tests, girth thresholds, certificate inequalities) are exact.
Edges carry a canonical total order, ``EdgeKey = (weight, lo, hi)``, which is
used everywhere a scan order or a tiebreak is needed; stored weights are never
perturbed.

Graphs are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import (
    DisconnectedError,
    DuplicateEdgeError,
    IdOutOfRangeError,
    NonPositiveWeightError,
    ParseError,
    SelfLoopError,
)

Weight = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse ``"3"``, ``"1.5"`` or ``"3/2"`` into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(value: Fraction) -> str:
    """Canonical text form: integer if integral, else ``p/q``."""
    return str(value)


class EdgeKey(NamedTuple):
    """Canonical edge identity and the package-wide edge total order.

    Tuples compare lexicographically, so sorting EdgeKeys sorts edges by
    weight with (lo, hi) as the deterministic tiebreak.  This makes the
    usual all-distinct-weights assumption operational without touching the
    stored weights.
    """

    weight: Fraction
    lo: int
    hi: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.lo, self.hi)


def _normalize_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected simple graph with positive rational edge weights.

    ``edges`` is always sorted by EdgeKey; two graphs are equal iff they have
    the same node count and edge set.
    """

    n: int
    edges: tuple[EdgeKey, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _weight_index(self) -> dict[tuple[int, int], Fraction]:
        return {(e.lo, e.hi): e.weight for e in self.edges}

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
        """Per-node list of (neighbor, weight), neighbors ascending."""
        adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.n)]
        for e in self.edges:
            adj[e.lo].append((e.hi, e.weight))
            adj[e.hi].append((e.lo, e.weight))
        return tuple(tuple(sorted(nbrs)) for nbrs in adj)

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_pair(u, v) in self._weight_index

    def weight_of(self, u: int, v: int) -> Fraction:
        return self._weight_index[_normalize_pair(u, v)]

    def total_weight(self) -> Fraction:
        return sum((e.weight for e in self.edges), Fraction(0))

    def edge_pairs(self) -> set[tuple[int, int]]:
        return set(self._weight_index)

    def check_node(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise IdOutOfRangeError(f"node {u} not in [0, {self.n})")


def build_graph(n: int, edge_list: Iterable[tuple[int, int, Weight | int | str]]) -> WeightedGraph:
    """Validate and canonicalize an edge list into a WeightedGraph.

    Raises SelfLoopError / DuplicateEdgeError / NonPositiveWeightError /
    IdOutOfRangeError naming the offending edge.
    """
    if n < 0:
        raise IdOutOfRangeError("node count must be nonnegative")
    seen: set[tuple[int, int]] = set()
    keys: list[EdgeKey] = []
    for u, v, w in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise IdOutOfRangeError(f"edge ({u}, {v}, {w}): id out of range [0, {n})")
        if u == v:
            raise SelfLoopError(f"edge ({u}, {v}, {w}): self-loop")
        weight = Fraction(w)
        if weight <= 0:
            raise NonPositiveWeightError(f"edge ({u}, {v}, {w}): weight must be positive")
        pair = _normalize_pair(u, v)
        if pair in seen:
            raise DuplicateEdgeError(f"edge ({u}, {v}, {w}): duplicate of {pair}")
        seen.add(pair)
        keys.append(EdgeKey(weight, *pair))
    keys.sort()
    return WeightedGraph(n, tuple(keys))


def subgraph_with_edges(g: WeightedGraph, edges: Iterable[EdgeKey]) -> WeightedGraph:
    """Edge-subgraph of g on the same node set."""
    return WeightedGraph(g.n, tuple(sorted(edges)))


def is_edge_subgraph(h: WeightedGraph, g: WeightedGraph) -> bool:
    return h.n == g.n and set(h.edges) <= set(g.edges)


def scale_weights(g: WeightedGraph, factor: Fraction) -> WeightedGraph:
    if factor <= 0:
        raise NonPositiveWeightError("scale factor must be positive")
    return WeightedGraph(g.n, tuple(sorted(EdgeKey(e.weight * factor, e.lo, e.hi) for e in g.edges)))


# ---------------------------------------------------------------------------
# shortest paths


def adjacency_distance(
    adj: Sequence[Iterable[tuple[int, Fraction]]],
    source: int,
    target: int,
    cutoff: Optional[Fraction] = None,
) -> Optional[Fraction]:
    """Dijkstra over a raw adjacency structure, with optional early cutoff.

    Returns the exact distance, or None when the target is unreachable or the
    distance provably exceeds ``cutoff``.  Whenever the true distance is
    <= cutoff, the returned value equals the uncut distance.
    """
    if source == target:
        return Fraction(0)
    dist: dict[int, Fraction] = {source: Fraction(0)}
    heap: list[tuple[Fraction, int]] = [(Fraction(0), source)]
    done: set[int] = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        if cutoff is not None and d > cutoff:
            return None
        if u == target:
            return d
        done.add(u)
        for v, w in adj[u]:
            if v in done:
                continue
            nd = d + w
            if cutoff is not None and nd > cutoff:
                continue
            old = dist.get(v)
            if old is None or nd < old:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return None


def shortest_path_distance(
    g: WeightedGraph, u: int, v: int, cutoff: Optional[Fraction] = None
) -> Optional[Fraction]:
    """Exact shortest-path distance between u and v; None if unreachable.

    With ``cutoff`` the search may stop early and return None as soon as the
    distance provably exceeds the cutoff.
    """
    g.check_node(u)
    g.check_node(v)
    return adjacency_distance(g.adjacency, u, v, cutoff)


def single_source_distances(g: WeightedGraph, source: int) -> list[Optional[Fraction]]:
    """Exact distances from ``source`` to every node (None if unreachable)."""
    g.check_node(source)
    dist: list[Optional[Fraction]] = [None] * g.n
    dist[source] = Fraction(0)
    heap: list[tuple[Fraction, int]] = [(Fraction(0), source)]
    done = [False] * g.n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in g.adjacency[u]:
            if done[v]:
                continue
            nd = d + w
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


# ---------------------------------------------------------------------------
# spanning forests


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def minimum_spanning_tree(g: WeightedGraph) -> tuple[EdgeKey, ...]:
    """Kruskal under the EdgeKey order; a spanning forest if disconnected.

    The output is deterministic: permuting the input edge list cannot change
    it, because edges are stored sorted by EdgeKey.
    """
    uf = _UnionFind(g.n)
    picked = []
    for e in g.edges:
        if uf.union(e.lo, e.hi):
            picked.append(e)
    return tuple(picked)


def connected_components(g: WeightedGraph) -> list[list[int]]:
    uf = _UnionFind(g.n)
    for e in g.edges:
        uf.union(e.lo, e.hi)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(uf.find(v), []).append(v)
    return sorted(groups.values())


def is_connected(g: WeightedGraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


# ---------------------------------------------------------------------------
# text format:  "n m" header, then m lines "u v w"; '#' starts a comment line


def serialize_graph(g: WeightedGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{e.lo} {e.hi} {format_rational(e.weight)}" for e in g.edges)
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def _parse_edge_line(lineno: int, line: str) -> tuple[int, int, Fraction]:
    parts = line.split()
    if len(parts) != 3:
        raise ParseError(f"expected 'u v w', got {line!r}", line=lineno)
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"bad node id in {line!r}", line=lineno) from None
    try:
        w = parse_rational(parts[2])
    except ValueError:
        raise ParseError(f"bad weight in {line!r}", line=lineno) from None
    return u, v, w


def parse_graph(text: str) -> WeightedGraph:
    """Inverse of serialize_graph; raises ParseError with a line number."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", line=1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"expected header 'n m', got {header!r}", line=lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"bad header {header!r}", line=lineno) from None
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}", line=lineno)
    edges = []
    for lineno, line in body:
        u, v, w = _parse_edge_line(lineno, line)
        try:
            # reuse build_graph validation at the end; range/sign errors here
            # get the line number attached
            if not (0 <= u < n and 0 <= v < n):
                raise IdOutOfRangeError(f"edge ({u}, {v}): id out of range [0, {n})")
            if u == v:
                raise SelfLoopError(f"edge ({u}, {v}): self-loop")
            if w <= 0:
                raise NonPositiveWeightError(f"edge ({u}, {v}): non-positive weight {w}")
        except (IdOutOfRangeError, SelfLoopError, NonPositiveWeightError) as exc:
            raise ParseError(str(exc), line=lineno) from None
        edges.append((u, v, w))
    try:
        return build_graph(n, edges)
    except DuplicateEdgeError as exc:
        raise ParseError(str(exc)) from None


def require_connected(g: WeightedGraph) -> None:
    if not is_connected(g):
        raise DisconnectedError(f"graph with {g.n} nodes is not connected")
