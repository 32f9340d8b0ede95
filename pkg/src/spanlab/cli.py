"""Command-line front end.

Subcommands: gen, spanner, analyze, reduce, verify <lemma-id>, bench.
Graph files use the "n m / u v w" text format; spanning-cycle files use the
"n c / u v w" chord format.  Exit codes: 0 on success (including a
not-applicable verdict), 1 when a certifier reports failure, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bench as bench_mod
from . import generators
from .errors import SpanlabError
from .girth import (
    certify_greedy_girth,
    check_max_weight_bound,
    lightness,
    unweighted_girth,
    weighted_girth,
)
from .graph import (
    WeightedGraph,
    minimum_spanning_tree,
    parse_graph,
    parse_rational,
    serialize_graph,
)
from .lemmas import (
    check_bucket_monotone_dispersion,
    check_monotone_dispersion,
    check_unweighted_dispersion,
    check_weak_counting,
    main_theorem_report,
    monte_carlo_full_counting,
    moore_bound_report,
    run_medium_counting,
)
from .paths import MODE_BUCKET, MODE_MONOTONE
from .report import FAIL, LemmaReport
from .spancycle import full_reduction, parse_scg, serialize_scg

GRAPH_LEMMAS = {"moore-dispersion", "moore-bound", "greedy-girth", "main-theorem"}
SCG_LEMMAS = {
    "warmup-dispersion",
    "full-dispersion",
    "weak-counting",
    "medium-counting",
    "full-counting-mc",
    "max-weight-bound",
}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spanlab",
        description="Greedy spanners, weighted girth, and safe-path certifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a graph deterministically")
    p_gen.add_argument("family", choices=generators.FAMILIES)
    p_gen.add_argument("--n", type=int, default=10)
    p_gen.add_argument("--m", type=int, default=20)
    p_gen.add_argument("--c", type=int, default=2, help="chord count (cycle-plus-chords)")
    p_gen.add_argument("--rows", type=int, default=4)
    p_gen.add_argument("--cols", type=int, default=4)
    p_gen.add_argument("--radius", type=_rational, default=Fraction(1, 2))
    p_gen.add_argument("--weights", default=None, help="unit or int:<lo>:<hi>")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--scg", action="store_true", help="emit spanning-cycle format")
    p_gen.add_argument("--out", default=None)

    p_spanner = sub.add_parser("spanner", help="run the greedy construction")
    p_spanner.add_argument("graph")
    p_spanner.add_argument("--t", type=_rational, required=True)
    p_spanner.add_argument("--out", default=None)

    p_analyze = sub.add_parser("analyze", help="sizes, lightness, and girth")
    p_analyze.add_argument("graph")
    p_analyze.add_argument("--limit-n", type=int, default=12, help="brute-force girth guard")
    p_analyze.add_argument("--format", choices=("text", "json"), default="text")
    p_analyze.add_argument("--out", default=None)

    p_reduce = sub.add_parser("reduce", help="reduce onto a unit spanning cycle")
    p_reduce.add_argument("graph")
    p_reduce.add_argument("--out", default=None)

    p_verify = sub.add_parser("verify", help="run one certifier")
    p_verify.add_argument("lemma", choices=sorted(GRAPH_LEMMAS | SCG_LEMMAS))
    p_verify.add_argument("input", help="graph or spanning-cycle file")
    p_verify.add_argument("--k", type=int, default=2)
    p_verify.add_argument("--eps", type=_rational, default=Fraction(1, 2))
    p_verify.add_argument("--t", type=_rational, default=Fraction(3))
    p_verify.add_argument("--mode", choices=(MODE_MONOTONE, MODE_BUCKET), default=MODE_BUCKET)
    p_verify.add_argument("--keep-prob", type=_rational, default=Fraction(1, 2))
    p_verify.add_argument("--trials", type=int, default=500)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--limit-n", type=int, default=24, help="brute-force girth guard")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--out", default=None)

    p_bench = sub.add_parser("bench", help="stretch/lightness tradeoff table")
    p_bench.add_argument("--config", default=None, help="JSON config file")
    p_bench.add_argument("--family", default="gnm")
    p_bench.add_argument("--n", type=_int_list, default=(32, 64))
    p_bench.add_argument("--m-per-n", type=_rational, default=Fraction(3))
    p_bench.add_argument("--weights", default="int:1:16")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--reps", type=int, default=1)
    p_bench.add_argument("--k", type=_int_list, default=(1, 2))
    p_bench.add_argument("--eps", type=_rational, default=Fraction(1, 2))
    p_bench.add_argument("--format", choices=("csv", "text", "json"), default="csv")
    p_bench.add_argument("--out", default=None)
    return parser


def _cmd_gen(args) -> int:
    params = {
        "n": args.n,
        "m": args.m,
        "c": args.c,
        "rows": args.rows,
        "cols": args.cols,
        "radius": args.radius,
    }
    if args.weights is not None:
        params["weights"] = args.weights
    if args.scg:
        if args.family != "cycle-plus-chords":
            raise SpanlabError("--scg requires the cycle-plus-chords family")
        scg = generators.cycle_plus_chords(
            args.n, args.c, args.seed, params.get("weights", "int:1:8")
        )
        _write_output(serialize_scg(scg), args.out)
        return 0
    g = generators.generate(args.family, params, seed=args.seed)
    _write_output(serialize_graph(g), args.out)
    return 0


def _cmd_spanner(args) -> int:
    from .spanner import greedy_spanner

    g = parse_graph(_read_text(args.graph))
    result = greedy_spanner(g, args.t)
    _write_output(serialize_graph(result.spanner), args.out)
    return 0


def _analyze_payload(g: WeightedGraph, limit_n: int) -> dict:
    from fractions import Fraction as F

    mst_weight = sum((e.weight for e in minimum_spanning_tree(g)), F(0))
    payload = {
        "n": g.n,
        "m": g.m,
        "total_weight": str(g.total_weight()),
        "mst_weight": str(mst_weight),
        "unweighted_girth": str(unweighted_girth(g)),
    }
    try:
        payload["lightness"] = str(lightness(g, g))
    except SpanlabError:
        payload["lightness"] = "undefined (disconnected)"
    if g.n <= limit_n:
        girth, witness = weighted_girth(g, node_limit=limit_n)
        payload["weighted_girth"] = str(girth)
        if witness is not None:
            payload["weighted_girth_cycle"] = list(witness.cycle)
    else:
        payload["weighted_girth"] = f"skipped (n > {limit_n})"
    return payload


def _cmd_analyze(args) -> int:
    g = parse_graph(_read_text(args.graph))
    payload = _analyze_payload(g, args.limit_n)
    if args.format == "json":
        _write_output(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _write_output("".join(f"{k}: {v}\n" for k, v in payload.items()), args.out)
    return 0


def _cmd_reduce(args) -> int:
    g = parse_graph(_read_text(args.graph))
    scg, _trace = full_reduction(g)
    _write_output(serialize_scg(scg), args.out)
    return 0


def _cmd_verify(args) -> int:
    lemma = args.lemma
    if lemma in GRAPH_LEMMAS:
        g = parse_graph(_read_text(args.input))
        if lemma == "moore-dispersion":
            report = check_unweighted_dispersion(g, args.k)
        elif lemma == "moore-bound":
            report = moore_bound_report(g, args.k)
        elif lemma == "greedy-girth":
            report = certify_greedy_girth(g, args.t, node_limit=args.limit_n)
        else:
            report = main_theorem_report(g, args.k, args.eps, girth_limit=args.limit_n)
    else:
        scg = parse_scg(_read_text(args.input))
        if lemma == "warmup-dispersion":
            report = check_monotone_dispersion(scg, args.k, args.eps, girth_limit=args.limit_n)
        elif lemma == "full-dispersion":
            report = check_bucket_monotone_dispersion(
                scg, args.k, args.eps, girth_limit=args.limit_n
            )
        elif lemma == "weak-counting":
            report = check_weak_counting(scg, args.k, args.eps, mode=args.mode)
        elif lemma == "medium-counting":
            report = run_medium_counting(scg, args.k, args.eps, mode=args.mode)
        elif lemma == "full-counting-mc":
            report = monte_carlo_full_counting(
                scg, args.k, args.eps, args.keep_prob, args.trials, args.seed, mode=args.mode
            )
        else:
            report = check_max_weight_bound(scg, args.t)
    text = report.to_json() + "\n" if args.format == "json" else report.to_text() + "\n"
    _write_output(text, args.out)
    return 1 if report.verdict == FAIL else 0


def _cmd_bench(args) -> int:
    if args.config:
        config = bench_mod.ExperimentConfig.from_json(_read_text(args.config))
    else:
        config = bench_mod.ExperimentConfig(
            family=args.family,
            ns=args.n,
            m_per_n=args.m_per_n,
            weights=args.weights,
            seed=args.seed,
            repetitions=args.reps,
            ks=args.k,
            eps=args.eps,
        )
    rows = bench_mod.run_tradeoff(config)
    summary = bench_mod.summarize(rows)
    if args.format == "csv":
        _write_output(bench_mod.rows_to_csv(rows), args.out)
    elif args.format == "json":
        payload = {
            "config": json.loads(config.to_json()),
            "rows": [json.loads("{}") | dict(zip(bench_mod.CSV_COLUMNS, r.to_csv().split(","))) for r in rows],
            "summary": summary,
        }
        _write_output(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [",".join(bench_mod.CSV_COLUMNS)]
        lines += [r.to_csv() for r in rows]
        lines.append(f"max_lightness_ratio: {summary['max_lightness_ratio']!r}")
        for k, points in summary["trend_by_k"].items():
            trend = " ".join(f"n={n}:{ratio:.6f}" for n, ratio in points)
            lines.append(f"trend k={k}: {trend}")
        _write_output("\n".join(lines) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "gen": _cmd_gen,
        "spanner": _cmd_spanner,
        "analyze": _cmd_analyze,
        "reduce": _cmd_reduce,
        "verify": _cmd_verify,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except SpanlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
