"""Stretch/lightness/sparsity tradeoff harness.

Runs the greedy construction with t = (1+eps)(2k-1) over seeded instance
suites, verifies every spanner exactly, and emits one row per (instance, k)
with the realized lightness against the n^(1/k) reference.  Outputs are
byte-identical for identical configs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadParamsError
from .generators import generate
from .girth import lightness
from .graph import WeightedGraph, minimum_spanning_tree, parse_rational
from .lemmas import derive_seed
from .spanner import greedy_spanner, verify_stretch

CSV_COLUMNS = (
    "n",
    "m",
    "k",
    "eps",
    "t",
    "spanner_edges",
    "spanner_weight",
    "mst_weight",
    "lightness",
    "n_pow_inv_k",
    "lightness_ratio",
)


@dataclass(frozen=True)
class ExperimentConfig:
    family: str
    ns: tuple[int, ...]
    m_per_n: Fraction  # edge count = round(m_per_n * n)
    weights: str = "int:1:16"
    seed: int = 0
    repetitions: int = 1
    ks: tuple[int, ...] = (1, 2)
    eps: Fraction = Fraction(1, 2)

    def to_json(self) -> str:
        payload = {
            "family": self.family,
            "ns": list(self.ns),
            "m_per_n": str(self.m_per_n),
            "weights": self.weights,
            "seed": self.seed,
            "repetitions": self.repetitions,
            "ks": list(self.ks),
            "eps": str(self.eps),
        }
        return json.dumps(payload, indent=2)

    @staticmethod
    def from_json(text: str) -> "ExperimentConfig":
        data = json.loads(text)
        return ExperimentConfig(
            family=data["family"],
            ns=tuple(data["ns"]),
            m_per_n=parse_rational(data["m_per_n"]),
            weights=data.get("weights", "int:1:16"),
            seed=data.get("seed", 0),
            repetitions=data.get("repetitions", 1),
            ks=tuple(data.get("ks", [1, 2])),
            eps=parse_rational(str(data.get("eps", "1/2"))),
        )


@dataclass(frozen=True)
class TradeoffRow:
    n: int
    m: int
    k: int
    eps: Fraction
    t: Fraction
    spanner_edges: int
    spanner_weight: Fraction
    mst_weight: Fraction
    lightness: Fraction
    n_pow_inv_k: float
    lightness_ratio: float

    def to_csv(self) -> str:
        return ",".join(
            str(v)
            for v in (
                self.n,
                self.m,
                self.k,
                self.eps,
                self.t,
                self.spanner_edges,
                self.spanner_weight,
                self.mst_weight,
                self.lightness,
                repr(self.n_pow_inv_k),
                repr(self.lightness_ratio),
            )
        )


def stretch_parameter(k: int, eps: Fraction) -> Fraction:
    return (1 + eps) * (2 * k - 1)


def run_tradeoff(config: ExperimentConfig) -> list[TradeoffRow]:
    """One row per (n, repetition, k); every spanner is stretch-verified."""
    if config.repetitions < 1:
        raise BadParamsError("repetitions must be >= 1")
    rows: list[TradeoffRow] = []
    for n in config.ns:
        m = round(config.m_per_n * n)
        for rep in range(config.repetitions):
            instance_seed = derive_seed(config.seed, n * 1_000_003 + rep)
            g = generate(
                config.family,
                {"n": n, "m": m, "weights": config.weights, "rows": n, "cols": n},
                seed=instance_seed,
            )
            mst_weight = sum(
                (e.weight for e in minimum_spanning_tree(g)), Fraction(0)
            )
            for k in config.ks:
                t = stretch_parameter(k, config.eps)
                result = greedy_spanner(g, t)
                violations = verify_stretch(g, result.spanner, t)
                if violations:  # cannot happen; guards the whole pipeline
                    raise AssertionError(f"stretch violation: {violations[0]}")
                light = lightness(result.spanner, g)
                reference = g.n ** (1 / k)
                rows.append(
                    TradeoffRow(
                        n=g.n,
                        m=g.m,
                        k=k,
                        eps=config.eps,
                        t=t,
                        spanner_edges=result.spanner.m,
                        spanner_weight=result.spanner.total_weight(),
                        mst_weight=mst_weight,
                        lightness=light,
                        n_pow_inv_k=reference,
                        lightness_ratio=float(light) / (float(1 / config.eps) * reference),
                    )
                )
    return rows


def rows_to_csv(rows: list[TradeoffRow]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    lines.extend(row.to_csv() for row in rows)
    return "\n".join(lines) + "\n"


def summarize(rows: list[TradeoffRow]) -> dict:
    """Max realized ratio overall and per (k, n) trend lines."""
    summary: dict = {"max_lightness_ratio": max((r.lightness_ratio for r in rows), default=0.0)}
    trends: dict[int, list[tuple[int, float]]] = {}
    for row in rows:
        trends.setdefault(row.k, []).append((row.n, row.lightness_ratio))
    summary["trend_by_k"] = {
        k: sorted(points) for k, points in sorted(trends.items())
    }
    return summary
