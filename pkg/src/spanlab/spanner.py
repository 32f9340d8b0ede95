"""Greedy spanner construction and exact stretch verification."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import InvalidStretchError, NotSubgraphError
from .graph import (
    EdgeKey,
    WeightedGraph,
    adjacency_distance,
    is_edge_subgraph,
    single_source_distances,
    subgraph_with_edges,
)


@dataclass(frozen=True)
class SpannerResult:
    """Output of one greedy run: the spanner plus the full scan transcript."""

    spanner: WeightedGraph
    stretch_t: Fraction
    added_order: tuple[EdgeKey, ...]
    rejected: tuple[EdgeKey, ...]


def greedy_spanner(g: WeightedGraph, t: Fraction | int | str) -> SpannerResult:
    """Scan edges in EdgeKey order; keep (u, v) iff the distance in the
    spanner built so far exceeds t * w(u, v).

    Distance queries use t * w(u, v) as a cutoff: only the comparison against
    the cutoff matters, and early termination keeps large inputs feasible.
    The scan order is fully determined by EdgeKey, so results are
    reproducible across runs and platforms.
    """
    t = Fraction(t)
    if t < 1:
        raise InvalidStretchError(f"stretch must be >= 1, got {t}")
    adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(g.n)]
    added: list[EdgeKey] = []
    rejected: list[EdgeKey] = []
    for e in g.edges:
        cutoff = t * e.weight
        d = adjacency_distance(adj, e.lo, e.hi, cutoff)
        if d is None:  # dist > t * w(u, v), including unreachable
            added.append(e)
            adj[e.lo].append((e.hi, e.weight))
            adj[e.hi].append((e.lo, e.weight))
        else:
            rejected.append(e)
    return SpannerResult(
        spanner=subgraph_with_edges(g, added),
        stretch_t=t,
        added_order=tuple(added),
        rejected=tuple(rejected),
    )


class StretchViolation(NamedTuple):
    u: int
    v: int
    dist_h: Fraction | None
    dist_g: Fraction


def verify_stretch(
    g: WeightedGraph, h: WeightedGraph, t: Fraction | int | str
) -> list[StretchViolation]:
    """All-pairs exact check that dist_h(u, v) <= t * dist_g(u, v).

    Returns the (possibly empty) list of violating pairs.  ``h`` must be an
    edge-subgraph of ``g`` on the same node set.
    """
    t = Fraction(t)
    if not is_edge_subgraph(h, g):
        raise NotSubgraphError("h is not an edge-subgraph of g")
    violations: list[StretchViolation] = []
    for u in range(g.n):
        dg = single_source_distances(g, u)
        dh = single_source_distances(h, u)
        for v in range(u + 1, g.n):
            if dg[v] is None:
                continue  # unreachable in g, hence in h as well
            if dh[v] is None or dh[v] > t * dg[v]:
                violations.append(StretchViolation(u, v, dh[v], dg[v]))
    return violations
