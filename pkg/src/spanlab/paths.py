"""Walk machinery on spanning-cycle graphs: steps, safe-path classification,
and brute-force enumerators.

A walk is a list of Steps; cycle steps move one position forward or backward
around the spanning cycle, chord steps traverse a chord in either direction.
Two path families are recognized:

* edge-monotone: k segments, each "s forward steps, one chord, s backward
  steps" with s <= eps * w(chord), chords strictly increasing under the
  EdgeKey order.  Extra-strict variant halves the s budget.
* bucket-monotone: segments over strictly increasing bucket indices, each a
  non-backtracking walk whose chords all lie in one bucket and whose 2s cycle
  steps are s forwards followed (in cycle-step order) by s backwards, with
  s <= eps * k * 2^i; the extra-strict variant uses 2^(i-1).  Exactly k chord
  steps overall.

Classification is exact and the decomposition, when it exists, is unique:
segment boundaries are forced by chord membership and the prefix/suffix
structure.  The enumerators generate candidates constructively and validate
every emitted walk with the classifier.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Sequence

from .errors import NotAWalkError, TooLargeError
from .graph import EdgeKey, WeightedGraph
from .spancycle import SpanningCycleGraph

FORWARD = "F"
BACKWARD = "B"
CHORD = "C"

MODE_MONOTONE = "monotone"
MODE_BUCKET = "bucket-monotone"

DEFAULT_ENUM_LIMIT = 2_000_000


class Step(NamedTuple):
    kind: str
    frm: int
    to: int
    chord: Optional[EdgeKey] = None

    def token(self) -> str:
        if self.kind == CHORD:
            return f"C:{self.frm}-{self.to}"
        return self.kind

    def edge_id(self) -> tuple[int, int]:
        """Undirected identity of the traversed edge (for backtrack checks)."""
        return (self.frm, self.to) if self.frm < self.to else (self.to, self.frm)


def forward_step(scg: SpanningCycleGraph, at: int) -> Step:
    return Step(FORWARD, at, scg.forward_of(at))


def backward_step(scg: SpanningCycleGraph, at: int) -> Step:
    return Step(BACKWARD, at, scg.backward_of(at))


def chord_step(scg: SpanningCycleGraph, frm: int, to: int) -> Step:
    chord = scg.chord_between(frm, to)
    if chord is None:
        raise NotAWalkError(f"no chord between {frm} and {to}")
    return Step(CHORD, frm, to, chord)


def dump_path(steps: Sequence[Step]) -> str:
    """One-line walk dump: tokens F, B, or C:u-v separated by spaces."""
    return " ".join(step.token() for step in steps)


def reverse_path(scg: SpanningCycleGraph, steps: Sequence[Step]) -> tuple[Step, ...]:
    out = []
    for step in reversed(steps):
        if step.kind == CHORD:
            out.append(Step(CHORD, step.to, step.frm, step.chord))
        elif step.kind == FORWARD:
            out.append(Step(BACKWARD, step.to, step.frm))
        else:
            out.append(Step(FORWARD, step.to, step.frm))
    return tuple(out)


def walk_endpoints(steps: Sequence[Step]) -> tuple[int, int]:
    if not steps:
        raise NotAWalkError("empty walk has no endpoints")
    return steps[0].frm, steps[-1].to


def path_sort_key(steps: Sequence[Step]):
    return (steps[0].frm if steps else -1, tuple(s.token() for s in steps))


def check_walk(scg: SpanningCycleGraph, steps: Sequence[Step]) -> None:
    """Raise NotAWalkError unless steps form a connected walk in scg."""
    n = scg.node_count
    prev_to = None
    for i, step in enumerate(steps):
        if not (0 <= step.frm < n and 0 <= step.to < n):
            raise NotAWalkError(f"step {i}: node out of range")
        if prev_to is not None and step.frm != prev_to:
            raise NotAWalkError(f"step {i}: starts at {step.frm}, previous ended at {prev_to}")
        if step.kind == FORWARD:
            if step.to != scg.forward_of(step.frm):
                raise NotAWalkError(f"step {i}: not a forward cycle step")
        elif step.kind == BACKWARD:
            if step.to != scg.backward_of(step.frm):
                raise NotAWalkError(f"step {i}: not a backward cycle step")
        elif step.kind == CHORD:
            chord = scg.chord_between(step.frm, step.to)
            if chord is None:
                raise NotAWalkError(f"step {i}: no chord {step.frm}-{step.to}")
            if step.chord is not None and step.chord != chord:
                raise NotAWalkError(f"step {i}: chord key mismatch")
        else:
            raise NotAWalkError(f"step {i}: unknown kind {step.kind!r}")
        prev_to = step.to


# ---------------------------------------------------------------------------
# buckets


class Bucket(NamedTuple):
    index: int
    edges: tuple[EdgeKey, ...]


def bucket_index(weight: Fraction) -> int:
    """i such that 2^i <= weight < 2^(i+1); weights must be >= 1."""
    if weight < 1:
        raise ValueError(f"bucket weights start at 1, got {weight}")
    i = 0
    while weight >= 2 ** (i + 1):
        i += 1
    return i


def bucketize(scg: SpanningCycleGraph) -> list[Bucket]:
    """Partition the chords by weight range [2^i, 2^(i+1)).

    Empty buckets are omitted; each bucket retains its true index.
    """
    groups: dict[int, list[EdgeKey]] = {}
    for e in scg.chords:
        groups.setdefault(bucket_index(e.weight), []).append(e)
    return [Bucket(i, tuple(sorted(groups[i]))) for i in sorted(groups)]


# ---------------------------------------------------------------------------
# classification


class EdgeSafeSegment(NamedTuple):
    edge: EdgeKey
    s: int
    steps: tuple[Step, ...]


class BucketSafeSegment(NamedTuple):
    bucket: int
    s: int
    steps: tuple[Step, ...]


def _run_lengths(steps: Sequence[Step]) -> Optional[tuple[int, int]]:
    """Split a chord-free stretch into (backward run, forward run); None if mixed."""
    b = 0
    while b < len(steps) and steps[b].kind == BACKWARD:
        b += 1
    f = b
    while f < len(steps) and steps[f].kind == FORWARD:
        f += 1
    if f != len(steps):
        return None
    return b, len(steps) - b


def _classify_monotone(
    scg: SpanningCycleGraph,
    steps: Sequence[Step],
    k: int,
    eps: Fraction,
    extra: bool,
    exact_count: bool,
) -> Optional[tuple[EdgeSafeSegment, ...]]:
    chord_positions = [i for i, s in enumerate(steps) if s.kind == CHORD]
    if exact_count and len(chord_positions) != k:
        return None
    if not chord_positions:
        return () if not steps else None

    # prefix must be pure forwards, suffix pure backwards, and every stretch
    # between chords must be backwards (closing one segment) then forwards
    # (opening the next)
    prefix = steps[: chord_positions[0]]
    if any(s.kind != FORWARD for s in prefix):
        return None
    suffix = steps[chord_positions[-1] + 1 :]
    if any(s.kind != BACKWARD for s in suffix):
        return None

    fwd_counts = [len(prefix)]
    bwd_counts = []
    for a, b in zip(chord_positions, chord_positions[1:]):
        runs = _run_lengths(steps[a + 1 : b])
        if runs is None:
            return None
        bwd_counts.append(runs[0])
        fwd_counts.append(runs[1])
    bwd_counts.append(len(suffix))

    segments = []
    cursor = 0
    prev_key: Optional[EdgeKey] = None
    for idx, pos in enumerate(chord_positions):
        chord = steps[pos].chord
        assert chord is not None
        if prev_key is not None and not prev_key < chord:
            return None  # EdgeKey order must strictly increase
        prev_key = chord
        s = fwd_counts[idx]
        if s != bwd_counts[idx]:
            return None
        budget = eps * chord.weight / (2 if extra else 1)
        if Fraction(s) > budget:
            return None
        seg_steps = tuple(steps[cursor : pos + 1 + s])
        cursor = pos + 1 + s
        segments.append(EdgeSafeSegment(chord, s, seg_steps))
    return tuple(segments)


def _segment_shape(
    steps: Sequence[Step],
    bucket: int,
    k: int,
    eps: Fraction,
    extra: bool,
) -> Optional[int]:
    """Return s if steps form a valid single-bucket segment, else None."""
    cycle_kinds = [s.kind for s in steps if s.kind != CHORD]
    f = cycle_kinds.count(FORWARD)
    b = cycle_kinds.count(BACKWARD)
    if f != b:
        return None
    if cycle_kinds != [FORWARD] * f + [BACKWARD] * b:
        return None
    for step in steps:
        if step.kind == CHORD and bucket_index(step.chord.weight) != bucket:
            return None
    for prev, cur in zip(steps, steps[1:]):
        if prev.edge_id() == cur.edge_id():
            return None  # backtracking
    budget = eps * k * Fraction(2) ** (bucket - 1 if extra else bucket)
    if Fraction(f) > budget:
        return None
    return f


def _classify_bucket(
    scg: SpanningCycleGraph,
    steps: Sequence[Step],
    k: int,
    eps: Fraction,
    extra: bool,
    exact_count: bool,
) -> Optional[tuple[BucketSafeSegment, ...]]:
    chord_positions = [i for i, s in enumerate(steps) if s.kind == CHORD]
    if exact_count and len(chord_positions) != k:
        return None
    if not chord_positions:
        return () if not steps else None

    buckets = [bucket_index(steps[i].chord.weight) for i in chord_positions]
    if any(b2 < b1 for b1, b2 in zip(buckets, buckets[1:])):
        return None

    # segment boundaries: where the bucket index strictly increases, the
    # intermediate cycle steps split as backwards (ending the old segment)
    # then forwards (starting the new one)
    boundaries = [0]
    seg_buckets = [buckets[0]]
    for j in range(len(chord_positions) - 1):
        if buckets[j + 1] == buckets[j]:
            continue
        between = steps[chord_positions[j] + 1 : chord_positions[j + 1]]
        runs = _run_lengths(between)
        if runs is None:
            return None
        boundaries.append(chord_positions[j] + 1 + runs[0])
        seg_buckets.append(buckets[j + 1])
    boundaries.append(len(steps))

    segments = []
    for idx, bucket in enumerate(seg_buckets):
        seg_steps = tuple(steps[boundaries[idx] : boundaries[idx + 1]])
        s = _segment_shape(seg_steps, bucket, k, eps, extra)
        if s is None:
            return None
        segments.append(BucketSafeSegment(bucket, s, seg_steps))
    return tuple(segments)


def classify_path(
    scg: SpanningCycleGraph,
    steps: Sequence[Step],
    k: int,
    eps: Fraction | int | str,
    mode: str = MODE_MONOTONE,
    extra: bool = False,
    exact_count: bool = True,
):
    """Return the unique decomposition if the walk belongs to the family,
    else None.

    ``k`` doubles as the required chord count and, in bucket mode, as the
    budget factor in the per-bucket step allowance.  With
    ``exact_count=False`` the chord count is left free while budgets still
    use ``k``; this validates walks produced by the traversal protocols,
    whose guarantee is "at least k chords for some walker" rather than
    "exactly k for every walker".
    """
    eps = Fraction(eps)
    check_walk(scg, steps)
    if mode == MODE_MONOTONE:
        return _classify_monotone(scg, steps, k, eps, extra, exact_count)
    if mode == MODE_BUCKET:
        return _classify_bucket(scg, steps, k, eps, extra, exact_count)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# enumeration


def enumerate_edge_simple_k_paths(
    g: WeightedGraph, k: int, node_limit: int = 64
) -> list[tuple[int, ...]]:
    """All k-edge walks with no repeated edge, one per direction class.

    Returned as node sequences (length k+1), sorted; a sequence and its
    reverse count once.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if g.n > node_limit:
        raise TooLargeError(f"{g.n} nodes exceeds node_limit={node_limit}")
    adj = g.adjacency
    out: list[tuple[int, ...]] = []

    def extend(path: tuple[int, ...], used: frozenset[tuple[int, int]]) -> None:
        if len(path) == k + 1:
            if path <= path[::-1]:
                out.append(path)
            return
        u = path[-1]
        for v, _ in adj[u]:
            eid = (u, v) if u < v else (v, u)
            if eid in used:
                continue
            extend(path + (v,), used | {eid})

    for start in range(g.n):
        extend((start,), frozenset())
    out.sort()
    return out


def _edge_safe_walk(
    scg: SpanningCycleGraph, chord: EdgeKey, tail: int, head: int, s: int
) -> tuple[Step, ...]:
    """s forwards ending at ``tail``, the chord to ``head``, s backwards."""
    n = scg.node_count
    steps = [Step(FORWARD, (tail - s + i) % n, (tail - s + i + 1) % n) for i in range(s)]
    steps.append(Step(CHORD, tail, head, chord))
    steps.extend(Step(BACKWARD, (head - i) % n, (head - i - 1) % n) for i in range(s))
    return tuple(steps)


def enumerate_edge_safe_paths(
    scg: SpanningCycleGraph, eps: Fraction, extra: bool = False
) -> list[tuple[Step, ...]]:
    """Every single-chord safe walk, both traversal directions, all s."""
    eps = Fraction(eps)
    out = []
    for chord in scg.chords:
        budget = eps * chord.weight / (2 if extra else 1)
        s_max = int(budget)  # floor; budget >= 0
        for s in range(s_max + 1):
            out.append(_edge_safe_walk(scg, chord, chord.lo, chord.hi, s))
            out.append(_edge_safe_walk(scg, chord, chord.hi, chord.lo, s))
    out.sort(key=path_sort_key)
    return out


def _enumerate_monotone(
    scg: SpanningCycleGraph, k: int, eps: Fraction, limit: int, extra: bool
) -> Iterator[tuple[Step, ...]]:
    n = scg.node_count
    chords = scg.chords  # already EdgeKey-sorted: combinations come out monotone
    s_max = {e: int(eps * e.weight / (2 if extra else 1)) for e in chords}
    spent = 0
    for combo in itertools.combinations(chords, k):
        work = 2 ** k
        for e in combo:
            work *= s_max[e] + 1
        spent += work
        if spent > limit:
            raise TooLargeError(f"enumeration work {spent} exceeds limit {limit}")
        for orient in itertools.product((0, 1), repeat=k):
            ends = [
                (e.lo, e.hi) if o == 0 else (e.hi, e.lo)
                for e, o in zip(combo, orient)
            ]
            for s_vec in itertools.product(*(range(s_max[e] + 1) for e in combo)):
                ok = True
                for i in range(k - 1):
                    # segment i ends at head_i - s_i; segment i+1 starts at tail_{i+1} - s_{i+1}
                    if (ends[i][1] - s_vec[i]) % n != (ends[i + 1][0] - s_vec[i + 1]) % n:
                        ok = False
                        break
                if not ok:
                    continue
                steps: list[Step] = []
                for (tail, head), e, s in zip(ends, combo, s_vec):
                    steps.extend(_edge_safe_walk(scg, e, tail, head, s))
                yield tuple(steps)


def _enumerate_bucket_segments(
    scg: SpanningCycleGraph,
    bucket: Bucket,
    chord_count: int,
    s_max: int,
    start: Optional[int],
    budget: list[int],
) -> Iterator[tuple[tuple[Step, ...], int]]:
    """All bucket-safe segments with exactly ``chord_count`` chords.

    ``start=None`` enumerates from every node.  ``budget`` is a one-element
    mutable work counter shared across the whole enumeration.
    """
    starts = range(scg.node_count) if start is None else (start,)

    def dfs(node: int, f: int, b: int, used: int, steps: list[Step]) -> Iterator[tuple[tuple[Step, ...], int]]:
        budget[0] -= 1
        if budget[0] < 0:
            raise TooLargeError("bucket segment enumeration exceeded work limit")
        if used == chord_count and f == b:
            yield tuple(steps), node
        last = steps[-1].edge_id() if steps else None
        if b == 0 and f < s_max:
            step = forward_step(scg, node)
            if step.edge_id() != last:
                steps.append(step)
                yield from dfs(step.to, f + 1, b, used, steps)
                steps.pop()
        if b < f:
            step = backward_step(scg, node)
            if step.edge_id() != last:
                steps.append(step)
                yield from dfs(step.to, f, b + 1, used, steps)
                steps.pop()
        if used < chord_count:
            for chord in scg.chords_at[node]:
                if chord not in bucket.edges:
                    continue
                if (chord.lo, chord.hi) == last:
                    continue
                other = chord.hi if node == chord.lo else chord.lo
                steps.append(Step(CHORD, node, other, chord))
                yield from dfs(other, f, b, used + 1, steps)
                steps.pop()

    for s0 in starts:
        yield from dfs(s0, 0, 0, 0, [])


def _enumerate_bucket_monotone(
    scg: SpanningCycleGraph, k: int, eps: Fraction, limit: int, extra: bool
) -> Iterator[tuple[Step, ...]]:
    buckets = bucketize(scg)
    budget = [limit]

    def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
        if parts == 1:
            yield (total,)
            return
        for first in range(1, total - parts + 2):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    def chain(
        chosen: list[tuple[Bucket, int]], idx: int, start: Optional[int], acc: list[Step]
    ) -> Iterator[tuple[Step, ...]]:
        if idx == len(chosen):
            yield tuple(acc)
            return
        bucket, count = chosen[idx]
        s_max = int(eps * k * Fraction(2) ** (bucket.index - 1 if extra else bucket.index))
        for seg_steps, end in _enumerate_bucket_segments(
            scg, bucket, count, s_max, start, budget
        ):
            acc.extend(seg_steps)
            yield from chain(chosen, idx + 1, end, acc)
            del acc[len(acc) - len(seg_steps) :]

    for r in range(1, min(k, len(buckets)) + 1):
        for subset in itertools.combinations(buckets, r):
            for counts in compositions(k, r):
                yield from chain(list(zip(subset, counts)), 0, None, [])


def enumerate_safe_k_paths(
    scg: SpanningCycleGraph,
    k: int,
    eps: Fraction | int | str,
    mode: str = MODE_MONOTONE,
    limit: int = DEFAULT_ENUM_LIMIT,
    extra: bool = False,
) -> list[tuple[Step, ...]]:
    """Brute-force enumeration of the full path family, deterministic order.

    Every emitted walk is re-validated with classify_path; the two must agree
    by construction, and the assertion guards the enumerators against drift.
    Direction is significant: a walk and its reverse are both emitted when
    both qualify.  ``extra=True`` enumerates the extra-strict family (halved
    step budgets).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    eps = Fraction(eps)
    if mode == MODE_MONOTONE:
        walks = list(_enumerate_monotone(scg, k, eps, limit, extra))
    elif mode == MODE_BUCKET:
        walks = list(_enumerate_bucket_monotone(scg, k, eps, limit, extra))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for walk in walks:
        assert classify_path(scg, walk, k, eps, mode, extra=extra) is not None, dump_path(walk)
    walks.sort(key=path_sort_key)
    return walks
