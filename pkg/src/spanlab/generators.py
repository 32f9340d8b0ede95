"""Seeded, deterministic graph generators for experiments and tests.

Identical (family, params, seed) always yields an identical graph.  Random
families draw through a single ``random.Random(seed)`` stream in a fixed
order; connectivity repairs are part of that stream.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Optional

from .errors import BadParamsError
from .graph import WeightedGraph, build_graph, connected_components
from .spancycle import SpanningCycleGraph, build_spanning_cycle_graph

GEOMETRIC_DENOMINATOR = 1 << 20

FAMILIES = ("gnm", "geometric", "grid", "cycle-plus-chords", "petersen", "complete")


def _sample_weight(rng: random.Random, weights: str) -> Fraction:
    """Weight specs: "unit", or "int:<lo>:<hi>" for uniform integers."""
    if weights == "unit":
        return Fraction(1)
    if weights.startswith("int:"):
        parts = weights.split(":")
        if len(parts) != 3:
            raise BadParamsError(f"bad weight spec {weights!r}")
        lo, hi = int(parts[1]), int(parts[2])
        if not 1 <= lo <= hi:
            raise BadParamsError(f"bad weight range {weights!r}")
        return Fraction(rng.randint(lo, hi))
    raise BadParamsError(f"unknown weight spec {weights!r}")


def petersen_graph() -> WeightedGraph:
    """The 10-node, 15-edge unit-weight Petersen graph."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5, 1))  # outer cycle
        edges.append((i, i + 5, 1))  # spokes
        edges.append((i + 5, 5 + (i + 2) % 5, 1))  # inner pentagram
    return build_graph(10, edges)


def complete_graph(n: int, weights: str = "unit", seed: int = 0) -> WeightedGraph:
    if n < 1:
        raise BadParamsError("complete graph needs n >= 1")
    rng = random.Random(seed)
    edges = [
        (u, v, _sample_weight(rng, weights)) for u in range(n) for v in range(u + 1, n)
    ]
    return build_graph(n, edges)


def grid_graph(rows: int, cols: int, weights: str = "unit", seed: int = 0) -> WeightedGraph:
    if rows < 1 or cols < 1:
        raise BadParamsError("grid needs rows, cols >= 1")
    rng = random.Random(seed)
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1, _sample_weight(rng, weights)))
            if r + 1 < rows:
                edges.append((v, v + cols, _sample_weight(rng, weights)))
    return build_graph(rows * cols, edges)


def gnm_graph(n: int, m: int, seed: int, weights: str = "int:1:16") -> WeightedGraph:
    """Uniform m-edge graph on n nodes, made connected if the sample is not.

    Connectivity repair adds uniformly chosen cross-component edges (drawn
    from the same seeded stream), so the edge count can exceed m by at most
    the number of extra components.
    """
    if n < 1:
        raise BadParamsError("gnm needs n >= 1")
    max_m = n * (n - 1) // 2
    if not 0 <= m <= max_m:
        raise BadParamsError(f"gnm needs 0 <= m <= {max_m}, got {m}")
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = rng.sample(pairs, m)
    edges = [(u, v, _sample_weight(rng, weights)) for u, v in chosen]
    g = build_graph(n, edges)
    components = connected_components(g)
    while len(components) > 1:
        a = rng.choice(components[0])
        b = rng.choice(components[1])
        edges.append((a, b, _sample_weight(rng, weights)))
        g = build_graph(n, edges)
        components = connected_components(g)
    return g


def geometric_graph(n: int, radius: Fraction, seed: int) -> WeightedGraph:
    """Random points in the unit square, coordinates snapped to denominator
    2^20; nodes within ``radius`` are joined by an edge whose weight is the
    Euclidean distance rounded down to the same denominator, so downstream
    arithmetic stays exact.  Disconnected samples are repaired by adding the
    lightest available cross-component pairs (deterministic, no randomness).
    """
    if n < 1:
        raise BadParamsError("geometric needs n >= 1")
    radius = Fraction(radius)
    if radius <= 0:
        raise BadParamsError("geometric needs radius > 0")
    rng = random.Random(seed)
    den = GEOMETRIC_DENOMINATOR
    points: list[tuple[Fraction, Fraction]] = []
    used = set()
    while len(points) < n:
        p = (Fraction(rng.randrange(den + 1), den), Fraction(rng.randrange(den + 1), den))
        if p in used:
            continue  # duplicate points would create zero-weight edges
        used.add(p)
        points.append(p)

    def distance(i: int, j: int) -> Fraction:
        dx = points[i][0] - points[j][0]
        dy = points[i][1] - points[j][1]
        squared = dx * dx + dy * dy
        scaled = squared * den * den
        return Fraction(math.isqrt(scaled.numerator // scaled.denominator), den)

    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            d = distance(i, j)
            if 0 < d <= radius:
                edges[(i, j)] = d
    g = build_graph(n, [(u, v, w) for (u, v), w in edges.items()])
    components = connected_components(g)
    while len(components) > 1:
        candidates = [
            (distance(a, b), a, b)
            for a in components[0]
            for comp in components[1:]
            for b in comp
        ]
        d, a, b = min(candidates)
        edges[(a, b)] = max(d, Fraction(1, den))
        g = build_graph(n, [(u, v, w) for (u, v), w in edges.items()])
        components = connected_components(g)
    return g


def cycle_plus_chords(
    n: int, c: int, seed: int, weights: str = "int:1:8"
) -> SpanningCycleGraph:
    """Unit n-cycle plus c random chords with weights >= 1."""
    if n < 4:
        raise BadParamsError("cycle-plus-chords needs n >= 4")
    eligible = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if not ((u - v) % n == 1 or (v - u) % n == 1)
    ]
    if c > len(eligible):
        raise BadParamsError(f"at most {len(eligible)} chords fit on a {n}-cycle")
    rng = random.Random(seed)
    chosen = rng.sample(eligible, c)
    chords = [(u, v, max(_sample_weight(rng, weights), Fraction(1))) for u, v in chosen]
    return build_spanning_cycle_graph(n, chords)


def generate(family: str, params: dict, seed: int = 0) -> WeightedGraph:
    """Dispatch a generator family; always returns a connected WeightedGraph."""
    if family == "petersen":
        return petersen_graph()
    if family == "complete":
        return complete_graph(params.get("n", 5), params.get("weights", "unit"), seed)
    if family == "grid":
        return grid_graph(
            params.get("rows", 4), params.get("cols", 4), params.get("weights", "unit"), seed
        )
    if family == "gnm":
        return gnm_graph(params["n"], params["m"], seed, params.get("weights", "int:1:16"))
    if family == "geometric":
        return geometric_graph(params["n"], params.get("radius", Fraction(1, 2)), seed)
    if family == "cycle-plus-chords":
        scg = cycle_plus_chords(
            params["n"], params.get("c", 2), seed, params.get("weights", "int:1:8")
        )
        return scg.to_graph()
    raise BadParamsError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")
