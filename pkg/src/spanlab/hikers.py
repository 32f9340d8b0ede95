"""Swap-based traversal protocols that place one walker per node and route
them so every journey is a monotone (or bucket-monotone) extra-strict safe
path.

Both protocols move a permutation of walkers around the spanning cycle.  The
single-edge protocol processes chords in EdgeKey order and, for each chord
and each offset s up to half the safe budget, swaps the two walkers standing
at the offset endpoints.  The bucketed protocol runs one day per nonempty
bucket (ascending): at dawn every walker plans t_i forward steps; in the
morning each bucket chord is spliced into the plans of the two walkers whose
s-th planned cycle step ends at its endpoints, for every s in 1..t_i, with
the plan suffixes swapped; in the afternoon the trailing forward run of each
plan is replaced by the matching number of backward steps (backtrack
cancellation) and the walkers walk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionViolatedError
from .paths import BACKWARD, CHORD, FORWARD, Step, bucketize
from .spancycle import SpanningCycleGraph


@dataclass(frozen=True)
class DayRecord:
    """One protocol round for one walker.

    Bucketed protocol: index is the bucket index and budget is t_i.
    Single-edge protocol: index is the chord's ordinal in the scan and budget
    is the offset s of the walked path.
    """

    index: int
    budget: int
    steps: tuple[Step, ...]


@dataclass(frozen=True)
class HikerJourney:
    hiker: int  # also the start node
    days: tuple[DayRecord, ...]
    steps: tuple[Step, ...]
    chords_hiked: int


class _JourneyBuilder:
    def __init__(self, n: int):
        self.days: list[list[DayRecord]] = [[] for _ in range(n)]
        self.steps: list[list[Step]] = [[] for _ in range(n)]

    def add_day(self, hiker: int, record: DayRecord) -> None:
        self.days[hiker].append(record)
        self.steps[hiker].extend(record.steps)

    def finish(self) -> list[HikerJourney]:
        return [
            HikerJourney(
                hiker=h,
                days=tuple(self.days[h]),
                steps=tuple(self.steps[h]),
                chords_hiked=sum(1 for s in self.steps[h] if s.kind == CHORD),
            )
            for h in range(len(self.days))
        ]


def _forward_run(scg: SpanningCycleGraph, start: int, count: int) -> list[Step]:
    steps = []
    at = start
    for _ in range(count):
        nxt = scg.forward_of(at)
        steps.append(Step(FORWARD, at, nxt))
        at = nxt
    return steps


def _backward_run(scg: SpanningCycleGraph, start: int, count: int) -> list[Step]:
    steps = []
    at = start
    for _ in range(count):
        nxt = scg.backward_of(at)
        steps.append(Step(BACKWARD, at, nxt))
        at = nxt
    return steps


def hiker_protocol_warmup(
    scg: SpanningCycleGraph, k: int, eps: Fraction | int | str
) -> list[HikerJourney]:
    """Single-edge swap protocol; every journey is a monotone extra-strict
    safe path.

    For each chord (u, v) in EdgeKey order and each s in 0..floor(eps*w/2),
    the walkers at u-s and v-s walk "s forwards, the chord, s backwards" in
    opposite directions and swap places: 2*(floor(eps*w/2)+1) traversals per
    chord.  Requires the 2*(floor(eps*w/2)+1) endpoint nodes of each chord to
    be pairwise distinct (guaranteed whenever the safe windows are small
    relative to the cycle); otherwise a walker could walk two paths for one
    chord, breaking strict monotonicity, and the protocol refuses to run.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    n = scg.node_count
    hiker_at = list(range(n))  # node -> hiker
    builder = _JourneyBuilder(n)

    for ordinal, chord in enumerate(scg.chords):
        u, v = chord.lo, chord.hi
        s_top = math.floor(eps * chord.weight / 2)
        endpoints = [(u - s) % n for s in range(s_top + 1)]
        endpoints += [(v - s) % n for s in range(s_top + 1)]
        if len(set(endpoints)) != len(endpoints):
            raise PreconditionViolatedError(
                f"chord {chord.pair}: safe windows overlap on the {n}-cycle"
            )
        for s in range(s_top + 1):
            a, b = (u - s) % n, (v - s) % n
            ha, hb = hiker_at[a], hiker_at[b]
            steps_a = _forward_run(scg, a, s) + [Step(CHORD, u, v, chord)]
            steps_a += _backward_run(scg, v, s)
            steps_b = _forward_run(scg, b, s) + [Step(CHORD, v, u, chord)]
            steps_b += _backward_run(scg, u, s)
            builder.add_day(ha, DayRecord(ordinal, s, tuple(steps_a)))
            builder.add_day(hb, DayRecord(ordinal, s, tuple(steps_b)))
            hiker_at[a], hiker_at[b] = hb, ha
    return builder.finish()


def _day_step_budget(k: int, eps: Fraction, bucket: int) -> int:
    return math.floor(eps * k * Fraction(2) ** (bucket - 1))


def hiker_protocol_full(
    scg: SpanningCycleGraph, k: int, eps: Fraction | int | str
) -> list[HikerJourney]:
    """Dawn/morning/afternoon protocol over buckets in ascending order; every
    journey is a bucket-monotone extra-strict safe path.

    Each bucket-i chord is spliced into exactly 2*t_i plans where
    t_i = floor(eps*k*2^(i-1)); days with t_i = 0 contribute nothing.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = scg.node_count
    position = list(range(n))  # hiker -> node
    builder = _JourneyBuilder(n)

    for bucket in bucketize(scg):
        t = _day_step_budget(k, eps, bucket.index)
        if t == 0:
            continue

        # dawn: plan t forward steps; ends[h][j] = node after the (j+1)-th
        # planned cycle step; who[s] inverts that per step index
        plans: list[list[Step]] = [_forward_run(scg, position[h], t) for h in range(n)]
        ends: list[list[int]] = [
            [(position[h] + j + 1) % n for j in range(t)] for h in range(n)
        ]
        who: list[dict[int, int]] = [{}] + [
            {(position[h] + s) % n: h for h in range(n)} for s in range(1, t + 1)
        ]

        for chord in bucket.edges:
            u, v = chord.lo, chord.hi
            for s in range(1, t + 1):
                hu, hv = who[s][u], who[s][v]
                pu = _index_after_cycle_step(plans[hu], s)
                pv = _index_after_cycle_step(plans[hv], s)
                tail_u, tail_v = plans[hu][pu:], plans[hv][pv:]
                plans[hu] = plans[hu][:pu] + [Step(CHORD, u, v, chord)] + tail_v
                plans[hv] = plans[hv][:pv] + [Step(CHORD, v, u, chord)] + tail_u
                ends[hu][s:], ends[hv][s:] = ends[hv][s:], ends[hu][s:]
                for s2 in range(s + 1, t + 1):
                    who[s2][ends[hu][s2 - 1]] = hu
                    who[s2][ends[hv][s2 - 1]] = hv

        # afternoon: drop the trailing forward run, walk back the difference
        new_position = list(position)
        for h in range(n):
            plan = plans[h]
            f = 0
            while f < len(plan) and plan[len(plan) - 1 - f].kind == FORWARD:
                f += 1
            if f == len(plan):  # no chords: the day cancels to nothing
                continue
            kept = plan[: len(plan) - f]
            day_steps = kept + _backward_run(scg, kept[-1].to, t - f)
            builder.add_day(h, DayRecord(bucket.index, t, tuple(day_steps)))
            new_position[h] = day_steps[-1].to
        position = new_position
        assert len(set(position)) == n  # walkers still form a permutation
    return builder.finish()


def _index_after_cycle_step(plan: list[Step], s: int) -> int:
    seen = 0
    for i, step in enumerate(plan):
        if step.kind != CHORD:
            seen += 1
            if seen == s:
                return i + 1
    raise AssertionError(f"plan has fewer than {s} cycle steps")
