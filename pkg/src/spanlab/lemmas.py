"""Certifiers for the dispersion and counting properties of safe paths.

Dispersion certifiers enumerate the relevant path family and check that no
unordered endpoint pair carries two distinct paths (a walk and its reverse
count as one).  They are conditional on a weighted-girth hypothesis, which is
verified by brute force first; a failed hypothesis yields the first-class
``not-applicable`` verdict, never a failure.  A genuine dispersion failure
would be a soundness bug, so the offending pair is reported together with a
materialized short cycle from the union of the two walks.

Counting certifiers run the traversal protocols constructively and check the
realized numbers against the explicitly stated thresholds; asymptotic
constants are reported, never asserted.
"""

from __future__ import annotations

import hashlib
import math
import random
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidProbabilityError, PreconditionViolatedError, TooLargeError
from .girth import (
    INFINITE,
    CycleWitness,
    normalized_cycle_weight,
    unweighted_girth,
    weighted_girth,
)
from .graph import EdgeKey, WeightedGraph, build_graph
from .hikers import HikerJourney, hiker_protocol_full, hiker_protocol_warmup
from .paths import (
    BACKWARD,
    CHORD,
    FORWARD,
    MODE_BUCKET,
    MODE_MONOTONE,
    Step,
    bucket_index,
    classify_path,
    dump_path,
    enumerate_edge_simple_k_paths,
    enumerate_safe_k_paths,
    reverse_path,
    walk_endpoints,
)
from .report import FAIL, NOT_APPLICABLE, PASS, LemmaReport
from .spancycle import SpanningCycleGraph, full_reduction

DEFAULT_GIRTH_LIMIT = 24


def derive_seed(seed: int, index: int) -> int:
    """Stable per-trial seed: identical across platforms and schedules."""
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _walk_identity(steps: Sequence[Step]) -> tuple:
    return (steps[0].frm, tuple(s.token() for s in steps))


def _canonical_walk(scg: SpanningCycleGraph, steps: Sequence[Step]) -> tuple:
    """Identity of a walk modulo reversal."""
    return min(_walk_identity(steps), _walk_identity(reverse_path(scg, steps)))


def _find_simple_cycle(g: WeightedGraph) -> Optional[list[int]]:
    """Any simple cycle of g, via DFS back edges; None if acyclic."""
    color = [0] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if color[root]:
            continue
        stack = [(root, -1)]
        while stack:
            node, par = stack.pop()
            if color[node]:
                continue
            color[node] = 1
            parent[node] = par
            for nbr, _ in g.adjacency[node]:
                if nbr == par:
                    continue
                if color[nbr]:
                    # back edge: walk both endpoints up to their meeting point
                    path_a = [node]
                    while path_a[-1] != -1 and path_a[-1] != nbr:
                        path_a.append(parent[path_a[-1]])
                    if path_a[-1] == nbr:
                        return path_a
                    continue
                stack.append((nbr, node))
    return None


def _union_cycle_witness(
    scg: SpanningCycleGraph, walk_a: Sequence[Step], walk_b: Sequence[Step]
) -> Optional[dict]:
    """Materialize a short cycle inside the union of two walks, with its
    exact normalized weight; used only when a dispersion check fails."""
    edges: dict[tuple[int, int], Fraction] = {}
    for step in list(walk_a) + list(walk_b):
        pair = step.edge_id()
        weight = step.chord.weight if step.kind == CHORD else Fraction(1)
        edges.setdefault(pair, weight)
    union = build_graph(scg.node_count, [(u, v, w) for (u, v), w in edges.items()])
    cycle = _find_simple_cycle(union)
    if cycle is None:
        return None
    witness = normalized_cycle_weight(union, cycle)
    return {
        "cycle": list(witness.cycle),
        "total_weight": witness.total_weight,
        "normalized_weight": witness.normalized_weight,
    }


def _girth_counts(girth, witness: Optional[CycleWitness]) -> dict:
    counts = {"weighted_girth": girth}
    if witness is not None:
        counts["girth_witness_cycle"] = list(witness.cycle)
    return counts


# ---------------------------------------------------------------------------
# dispersion


def check_unweighted_dispersion(g: WeightedGraph, k: int, node_limit: int = 64) -> LemmaReport:
    """No two distinct edge-simple k-paths may share (unordered) endpoints,
    provided the graph's girth exceeds 2k."""
    girth = unweighted_girth(g)
    instance = f"n={g.n} m={g.m} k={k}"
    counts = {"girth": girth, "threshold": 2 * k}
    if not girth > 2 * k:
        return LemmaReport("moore-dispersion", instance, NOT_APPLICABLE, counts)
    paths = enumerate_edge_simple_k_paths(g, k, node_limit=node_limit)
    by_pair: dict[tuple[int, int], tuple[int, ...]] = {}
    collisions = []
    for path in paths:
        pair = (path[0], path[-1]) if path[0] <= path[-1] else (path[-1], path[0])
        other = by_pair.get(pair)
        if other is not None:
            collisions.append({"endpoints": list(pair), "paths": [list(other), list(path)]})
        else:
            by_pair[pair] = path
    counts.update({"path_count": len(paths), "endpoint_pairs": len(by_pair)})
    return LemmaReport(
        "moore-dispersion",
        instance,
        PASS if not collisions else FAIL,
        counts,
        witnesses=tuple(collisions),
    )


def _dispersion(
    scg: SpanningCycleGraph,
    k: int,
    eps: Fraction,
    mode: str,
    lemma: str,
    girth_factor: int,
    girth_limit: int,
    precomputed_girth=None,
) -> LemmaReport:
    threshold = (1 + girth_factor * eps) * 2 * k
    if precomputed_girth is None:
        girth, witness = weighted_girth(scg.to_graph(), node_limit=girth_limit)
    else:
        girth, witness = precomputed_girth
    instance = f"n={scg.node_count} chords={len(scg.chords)} k={k} eps={eps}"
    counts = {"threshold": threshold, **_girth_counts(girth, witness)}
    if not girth > threshold:
        return LemmaReport(lemma, instance, NOT_APPLICABLE, counts)
    paths = enumerate_safe_k_paths(scg, k, eps, mode=mode)
    seen: dict[tuple[int, int], dict] = {}
    collisions = []
    for steps in paths:
        a, b = walk_endpoints(steps)
        pair = (a, b) if a <= b else (b, a)
        canon = _canonical_walk(scg, steps)
        slot = seen.setdefault(pair, {})
        if canon in slot:
            continue
        slot[canon] = steps
        if len(slot) == 2:
            first, second = list(slot.values())
            collisions.append(
                {
                    "endpoints": list(pair),
                    "paths": [dump_path(first), dump_path(second)],
                    "union_cycle": _union_cycle_witness(scg, first, second),
                }
            )
    counts.update(
        {
            "path_count": len(paths),
            "distinct_paths": sum(len(v) for v in seen.values()),
            "endpoint_pairs": len(seen),
            "pair_bound": scg.node_count**2,
        }
    )
    return LemmaReport(
        lemma,
        instance,
        PASS if not collisions else FAIL,
        counts,
        witnesses=tuple(collisions),
    )


def check_monotone_dispersion(
    scg: SpanningCycleGraph,
    k: int,
    eps: Fraction | int | str,
    girth_limit: int = DEFAULT_GIRTH_LIMIT,
    precomputed_girth=None,
) -> LemmaReport:
    """Monotone safe k-paths disperse when weighted girth > (1+2*eps)*2k."""
    return _dispersion(
        scg,
        k,
        Fraction(eps),
        MODE_MONOTONE,
        "warmup-dispersion",
        girth_factor=2,
        girth_limit=girth_limit,
        precomputed_girth=precomputed_girth,
    )


def check_bucket_monotone_dispersion(
    scg: SpanningCycleGraph,
    k: int,
    eps: Fraction | int | str,
    girth_limit: int = DEFAULT_GIRTH_LIMIT,
    precomputed_girth=None,
) -> LemmaReport:
    """Bucket-monotone safe k-paths disperse when weighted girth >
    (1+4*eps)*2k; as a consequence there are at most n^2 of them."""
    return _dispersion(
        scg,
        k,
        Fraction(eps),
        MODE_BUCKET,
        "full-dispersion",
        girth_factor=4,
        girth_limit=girth_limit,
        precomputed_girth=precomputed_girth,
    )


# ---------------------------------------------------------------------------
# counting


def _counting_threshold(scg: SpanningCycleGraph, k: int, eps: Fraction, mode: str) -> Fraction:
    n = Fraction(scg.node_count)
    if mode == MODE_MONOTONE:
        return k * n / eps
    return 4 * n / eps


def _run_protocol(scg: SpanningCycleGraph, k: int, eps: Fraction, mode: str) -> list[HikerJourney]:
    if mode == MODE_MONOTONE:
        return hiker_protocol_warmup(scg, k, eps)
    if mode == MODE_BUCKET:
        return hiker_protocol_full(scg, k, eps)
    raise ValueError(f"unknown mode {mode!r}")


def check_weak_counting(
    scg: SpanningCycleGraph, k: int, eps: Fraction | int | str, mode: str = MODE_BUCKET
) -> LemmaReport:
    """If the chord weight meets the threshold, some protocol journey walks at
    least k chords.  A failed hypothesis passes vacuously; the maximum journey
    length is reported either way."""
    eps = Fraction(eps)
    chord_weight = scg.chord_weight_total()
    threshold = _counting_threshold(scg, k, eps, mode)
    hypothesis = chord_weight >= threshold
    instance = f"n={scg.node_count} chords={len(scg.chords)} k={k} eps={eps} mode={mode}"
    counts = {
        "chord_weight": chord_weight,
        "threshold": threshold,
        "hypothesis_holds": hypothesis,
    }
    try:
        journeys = _run_protocol(scg, k, eps, mode)
    except PreconditionViolatedError as exc:
        # Overlapping safe windows: the swap schedule cannot stay monotone.
        # The existence claim is then checked by direct enumeration instead.
        counts["protocol_precondition"] = str(exc)
        counts["fallback_enumeration"] = True
        try:
            found = enumerate_safe_k_paths(scg, k, eps, mode=mode, extra=True)
        except TooLargeError:
            return LemmaReport("weak-counting", instance, NOT_APPLICABLE, counts)
        counts["extra_safe_path_count"] = len(found)
        verdict = PASS if (not hypothesis or found) else FAIL
        witnesses = ({"path": dump_path(found[0])},) if (hypothesis and found) else ()
        return LemmaReport("weak-counting", instance, verdict, counts, witnesses=witnesses)
    best = max(journeys, key=lambda j: (j.chords_hiked, -j.hiker), default=None)
    max_chords = best.chords_hiked if best else 0
    counts["max_journey_chords"] = max_chords
    counts["total_traversals"] = sum(j.chords_hiked for j in journeys)
    verdict = PASS if (not hypothesis or max_chords >= k) else FAIL
    witnesses = ()
    if hypothesis and best is not None:
        witnesses = ({"hiker": best.hiker, "path": dump_path(best.steps)},)
    return LemmaReport("weak-counting", instance, verdict, counts, witnesses=witnesses)


def _shift_segment(scg: SpanningCycleGraph, steps: Sequence[Step], shift: int) -> list[Step]:
    """Pad a segment with `shift` extra forwards in front and backwards behind."""
    if not steps:
        return []
    n = scg.node_count
    start, end = steps[0].frm, steps[-1].to
    prefix = [
        Step(FORWARD, (start - shift + i) % n, (start - shift + i + 1) % n)
        for i in range(shift)
    ]
    suffix = [Step(BACKWARD, (end - i) % n, (end - i - 1) % n) for i in range(shift)]
    return prefix + list(steps) + suffix


def run_medium_counting(
    scg: SpanningCycleGraph, k: int, eps: Fraction | int | str, mode: str = MODE_BUCKET
) -> LemmaReport:
    """Record-and-delete loop: while the weak-counting hypothesis holds, take
    a protocol journey with >= k chords, record its family of offset-padded
    safe k-paths, then delete the journey's lightest chord and repeat.

    Every recorded path must classify as a safe k-path and all recorded paths
    must be pairwise distinct.
    """
    eps = Fraction(eps)
    instance = f"n={scg.node_count} chords={len(scg.chords)} k={k} eps={eps} mode={mode}"
    current = scg
    recorded: list[tuple[Step, ...]] = []
    rounds = 0
    degenerate_stop = False
    initial_weight = scg.chord_weight_total()
    while True:
        threshold = _counting_threshold(current, k, eps, mode)
        if current.chord_weight_total() < threshold:
            break
        try:
            journeys = _run_protocol(current, k, eps, mode)
        except PreconditionViolatedError:
            degenerate_stop = True
            break
        best = max(journeys, key=lambda j: (j.chords_hiked, -j.hiker))
        if best.chords_hiked < k:
            degenerate_stop = True  # all step budgets rounded down to zero
            break
        segments = _collect_first_k_segments(current, best, k)
        first_chord = next(s.chord for s in segments[0] if s.kind == CHORD)
        if mode == MODE_MONOTONE:
            shift_top = math.floor(eps * first_chord.weight / 2)
        else:
            shift_top = math.floor(eps * k * Fraction(2) ** (bucket_index(first_chord.weight) - 1))
        for shift in range(shift_top + 1):
            padded: list[Step] = []
            for seg in segments:
                padded.extend(_shift_segment(current, seg, shift))
            recorded.append(tuple(padded))
        rounds += 1
        remaining = tuple(e for e in current.chords if e != first_chord)
        current = SpanningCycleGraph(current.node_count, remaining)

    all_valid = all(
        classify_path(scg, path, k, eps, mode=mode, extra=False) is not None
        for path in recorded
    )
    identities = {_walk_identity(path) for path in recorded}
    distinct = len(identities) == len(recorded)
    counts = {
        "rounds": rounds,
        "recorded_paths": len(recorded),
        "initial_chord_weight": initial_weight,
        "final_chord_weight": current.chord_weight_total(),
        "all_valid": all_valid,
        "pairwise_distinct": distinct,
        "degenerate_stop": degenerate_stop,
    }
    verdict = PASS if (all_valid and distinct and len(recorded) >= rounds) else FAIL
    return LemmaReport("medium-counting", instance, verdict, counts)


def _collect_first_k_segments(
    scg: SpanningCycleGraph, journey: HikerJourney, k: int
) -> list[tuple[Step, ...]]:
    """First k chords of a journey as chained day segments; the day holding
    the k-th chord is truncated right after it and re-balanced with backward
    steps so the segment keeps its forwards-then-backwards shape."""
    segments: list[tuple[Step, ...]] = []
    taken = 0
    for day in journey.days:
        day_chords = sum(1 for s in day.steps if s.kind == CHORD)
        if day_chords == 0:
            continue
        if taken + day_chords < k:
            segments.append(day.steps)
            taken += day_chords
            continue
        need = k - taken
        kept: list[Step] = []
        for step in day.steps:
            kept.append(step)
            if step.kind == CHORD:
                need -= 1
                if need == 0:
                    break
        forwards = sum(1 for s in kept if s.kind == FORWARD)
        backwards = len(kept) - forwards - sum(1 for s in kept if s.kind == CHORD)
        at = kept[-1].to
        for _ in range(forwards - backwards):
            nxt = scg.backward_of(at)
            kept.append(Step(BACKWARD, at, nxt))
            at = nxt
        segments.append(tuple(kept))
        return segments
    raise AssertionError("journey has fewer than k chords")


def monte_carlo_full_counting(
    scg: SpanningCycleGraph,
    k: int,
    eps: Fraction | int | str,
    keep_prob: Fraction | int | str,
    trials: int,
    seed: int,
    mode: str = MODE_BUCKET,
) -> LemmaReport:
    """Random-subgraph survival experiment behind the full counting bound.

    The spanning cycle is kept deterministically; each chord survives
    independently with probability keep_prob.  The exact expected number of
    surviving safe k-paths is sum over paths of keep_prob^(distinct chords),
    computed from enumeration; the empirical mean over seeded trials must
    fall within four standard errors.  The report also evaluates both sides
    of the chained counting inequality with realized constants.
    """
    eps = Fraction(eps)
    keep_prob = Fraction(keep_prob)
    if not 0 <= keep_prob <= 1:
        raise InvalidProbabilityError(f"keep_prob must be in [0, 1], got {keep_prob}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    paths = enumerate_safe_k_paths(scg, k, eps, mode=mode)
    chord_sets = [frozenset(s.edge_id() for s in p if s.kind == CHORD) for p in paths]
    exact = sum((keep_prob ** len(cs) for cs in chord_sets), Fraction(0))

    chords = scg.chords
    outcomes: list[int] = []
    for t in range(trials):
        rng = random.Random(derive_seed(seed, t))
        kept = {
            e.pair
            for e in chords
            if rng.randrange(keep_prob.denominator) < keep_prob.numerator
        }
        outcomes.append(sum(1 for cs in chord_sets if cs <= kept))

    mean = Fraction(sum(outcomes), trials)
    if trials > 1:
        variance = sum((Fraction(x) - mean) ** 2 for x in outcomes) / (trials - 1)
    else:
        variance = Fraction(0)
    stderr = math.sqrt(variance / trials)
    deviation = abs(float(mean - exact))
    if stderr == 0:
        ok = mean == exact
    else:
        ok = deviation <= 4 * stderr

    expected_chord_weight = keep_prob * scg.chord_weight_total()
    threshold = _counting_threshold(scg, k, eps, mode)
    chain_rhs = expected_chord_weight - threshold
    realized_factor = exact / chain_rhs if chain_rhs > 0 else None

    counts = {
        "path_count": len(paths),
        "keep_prob": keep_prob,
        "trials": trials,
        "seed": seed,
        "exact_expectation": exact,
        "empirical_mean": mean,
        "stderr": stderr,
        "deviation": deviation,
        "expected_surviving_chord_weight": expected_chord_weight,
        "chain_rhs": chain_rhs,
        "realized_factor": realized_factor,
    }
    instance = f"n={scg.node_count} chords={len(scg.chords)} k={k} eps={eps} mode={mode}"
    return LemmaReport("full-counting-mc", instance, PASS if ok else FAIL, counts)


# ---------------------------------------------------------------------------
# composite reports


def moore_bound_report(g: WeightedGraph, k: int, node_limit: int = 64) -> LemmaReport:
    """Edge-count report against the n^(1+1/k) ceiling for girth > 2k."""
    girth = unweighted_girth(g)
    dispersion = check_unweighted_dispersion(g, k, node_limit=node_limit)
    exponent = Fraction(k + 1, k)
    ratio = g.m / g.n ** (1 + 1 / k) if g.n else float("nan")
    counts = {
        "n": g.n,
        "m": g.m,
        "girth": girth,
        "k": k,
        "girth_precondition": girth > 2 * k,
        "path_count": dispersion.counts.get("path_count"),
        "ratio_numerator": g.m,
        "ratio_base": g.n,
        "ratio_exponent": exponent,
        "ratio_approx": ratio,
    }
    verdict = dispersion.verdict
    return LemmaReport(
        "moore-bound",
        f"n={g.n} m={g.m} k={k}",
        verdict,
        counts,
        sub_reports=(dispersion,),
    )


def main_theorem_report(
    h: WeightedGraph,
    k: int,
    eps: Fraction | int | str,
    girth_limit: int = 40,
) -> LemmaReport:
    """End-to-end: reduce, certify the girth hypothesis, then run the
    bucket-monotone dispersion and counting certifiers on the reduced
    instance.  Records the weight/size ratio for tradeoff tables; the hidden
    constant is reported, not asserted."""
    eps = Fraction(eps)
    scg, trace = full_reduction(h)
    reduced = scg.to_graph()
    girth, witness = weighted_girth(reduced, node_limit=girth_limit)
    threshold = (1 + 4 * eps) * 2 * k
    n = scg.node_count
    w_total = reduced.total_weight()
    ratio = float(w_total) / (float(1 / eps) * n ** (1 + 1 / k))
    counts = {
        "original_n": h.n,
        "reduced_n": n,
        "reduced_weight": w_total,
        "threshold": threshold,
        "weight_ratio": ratio,
        **_girth_counts(girth, witness),
    }
    instance = f"n={h.n} m={h.m} k={k} eps={eps}"
    if not girth > threshold:
        return LemmaReport("main-theorem", instance, NOT_APPLICABLE, counts)
    girth_pair = (girth, witness)
    subs = (
        check_bucket_monotone_dispersion(
            scg, k, eps, girth_limit=girth_limit, precomputed_girth=girth_pair
        ),
        check_weak_counting(scg, k, eps, mode=MODE_BUCKET),
        run_medium_counting(scg, k, eps, mode=MODE_BUCKET),
    )
    verdict = PASS if all(r.passed for r in subs) else FAIL
    return LemmaReport("main-theorem", instance, verdict, counts, sub_reports=subs)
