"""Command-line entry point: measure, generate, analyze, axioms and bench.

Exit codes: 0 success, 1 usage, 2 data (unreadable or empty input),
3 infeasible generator parameters. The worker thread count comes from
``--threads``, then ``HT_THREADS``, then the CPU count.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import statistics
import sys
import time
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import __version__
from .analysis import observation_report
from .axioms import conformance_table
from .core import Hypergraph, WedgeParts, enumerate_hyperwedges, load_hypergraph, overlapping_candidates, write_edge_list
from .errors import HypertransError, InfeasibleParametersError
from .generators import (
    SizeDistribution,
    TheraParams,
    generate_naive_thera,
    generate_thera,
    hypercl_counterpart,
    load_sizes,
    size_distribution_from,
)
from .interaction import PENALIZED, ScoreFunction, score_function
from .measures import MeasureKind, default_threads, graph_transitivity, hypertrans_fast, hypertrans_naive, level_summary

__all__ = ["main", "run", "BenchRecord", "bench_compare", "bench_generation", "config_hash"]

DEFAULT_SEED = 0

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INFEASIBLE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------- benchmarks


@dataclass(frozen=True)
class BenchRecord:
    workload: str
    algorithm: str
    wall_time: float
    wedge_count: int
    touches: int
    value: float

    FIELDS = ("workload", "algorithm", "wall_time", "wedge_count", "touches", "value")


def bench_compare(
    H: Hypergraph,
    f: ScoreFunction | str = PENALIZED,
    repeats: int = 3,
    workload: str = "input",
) -> list[BenchRecord]:
    """Time the naive and fast HyperTrans over the same wedge stream with C = Omega(w).

    Wall time is the median over ``repeats``. Touches count candidate/pair
    visits: naive visits every (pair, candidate) combination, fast visits each
    covered pair of each candidate plus one pass over P(w).
    """
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    f = score_function(f)
    sets = H.edge_sets
    stream = []
    for w in enumerate_hyperwedges(H):
        parts = WedgeParts.from_edges(sets[w.edge_a], sets[w.edge_b])
        C = [sets[i] for i in sorted(overlapping_candidates(H, parts))]
        stream.append((parts, C))

    naive_touch = fast_touch = 0
    for parts, C in stream:
        naive_touch += parts.pair_count * len(C)
        fast_touch += parts.pair_count + sum(len(e & parts.left) * len(e & parts.right) for e in C)

    def timed(fn):
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            vals = [fn(parts, C, f) if C else 0.0 for parts, C in stream]
            times.append(time.perf_counter() - t0)
        return statistics.median(times), vals

    t_naive, v_naive = timed(hypertrans_naive)
    t_fast, v_fast = timed(hypertrans_fast)
    for a, b in zip(v_naive, v_fast):
        if abs(a - b) > 1e-12:
            raise AssertionError(f"naive and fast disagree: {a!r} != {b!r}")
    n = len(stream)

    def mean(vs):
        return sum(vs) / n if n else 0.0

    return [
        BenchRecord(workload, "naive", t_naive, n, naive_touch, mean(v_naive)),
        BenchRecord(workload, "fast", t_fast, n, fast_touch, mean(v_fast)),
    ]


def bench_generation(
    edge_counts: Sequence[int], seed: int = DEFAULT_SEED, repeats: int = 1, C: int = 10, p: float = 0.8
) -> list[BenchRecord]:
    """THera wall time at several hyperedge counts; n scales with m (n = m / 10)."""
    shape = {2: 3, 3: 4, 4: 2, 5: 1}
    out = []
    for m in edge_counts:
        unit = m // sum(shape.values())
        S = SizeDistribution({k: v * unit for k, v in shape.items()})
        params = TheraParams(max(2, m // 10), S, C, p, seed=seed)
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            H = generate_thera(params)
            times.append(time.perf_counter() - t0)
        out.append(BenchRecord(f"thera-m{S.total}", "thera", statistics.median(times), 0, len(H), float("nan")))
    return out


def write_bench_csv(records: Sequence[BenchRecord], target) -> None:
    w = csv.writer(target, lineterminator="\n")
    w.writerow(BenchRecord.FIELDS)
    for r in records:
        w.writerow([getattr(r, k) for k in BenchRecord.FIELDS])


# ---------------------------------------------------------------- helpers


_NOT_CONFIG = {"func", "threads", "out", "csv_dir", "wedges_csv"}


def config_hash(config: dict) -> str:
    """Short sha256 over the canonical JSON of the result-affecting options."""
    blob = json.dumps(config, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _header(args: argparse.Namespace) -> dict:
    config = {k: v for k, v in vars(args).items() if k not in _NOT_CONFIG}
    return {
        "tool": "hypertrans",
        "version": __version__,
        "command": args.command,
        "seed": getattr(args, "seed", None),
        "config": config,
        "config_hash": config_hash(config),
    }


def _emit_json(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, default=_json_default)
    if out in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def _threads(args) -> int:
    return args.threads if args.threads else default_threads()


def _load(args) -> Hypergraph:
    return load_hypergraph(args.input, format=args.format, dedupe=not args.keep_duplicates)


def _histogram(scores: np.ndarray, bins: int = 20) -> list[tuple[float, float, int]]:
    counts, edges = np.histogram(scores, bins=bins, range=(0.0, 1.0))
    return [(float(edges[i]), float(edges[i + 1]), int(c)) for i, c in enumerate(counts)]


# ---------------------------------------------------------------- commands


def cmd_measure(args) -> int:
    H = _load(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        r = graph_transitivity(
            H, args.score, args.measure, sample_rate=args.sample_rate, seed=args.seed,
            engine=args.engine, threads=_threads(args),
        )
    doc = {"schema": "hypertrans.measure/1", "metadata": _header(args), "graph_T": r.value}
    doc["counts"] = H.counts()
    doc["levels"] = level_summary(H, args.score, result=r).to_dict(H)
    if args.wedges_csv:
        r.wedges.write_csv(args.wedges_csv)
    _emit_json(doc, args.out)
    return EXIT_OK


def _sizes(args) -> SizeDistribution:
    if args.sizes and args.sizes_from:
        raise UsageError("give either --sizes or --sizes-from, not both")
    if args.sizes_from:
        return size_distribution_from(load_hypergraph(args.sizes_from, format=args.format))
    if args.sizes:
        return load_sizes(args.sizes)
    raise UsageError(f"--model {args.model} needs --sizes or --sizes-from")


def cmd_generate(args) -> int:
    if args.model == "hypercl":
        if not args.input:
            raise UsageError("--model hypercl needs --input (the hypergraph whose sequences are matched)")
        H = hypercl_counterpart(_load(args), args.seed)
    else:
        if args.n is None:
            raise UsageError(f"--model {args.model} needs --n")
        S = _sizes(args)
        if args.model == "thera":
            params = TheraParams(
                args.n, S, args.community, args.intra, args.alpha, args.beta, args.seed, args.community_rule
            )
            H = generate_thera(params)
        else:
            H = generate_naive_thera(args.n, S, args.community, args.seed)
    write_edge_list(H, args.out)
    meta = {"schema": "hypertrans.generate/1", "metadata": _header(args), "counts": H.counts()}
    meta["generator"] = dict(H.metadata or {})
    _emit_json(meta, args.out + ".meta.json")
    return EXIT_OK


def cmd_analyze(args) -> int:
    H = _load(args)
    gen = load_hypergraph(args.generated, format=args.format) if args.generated else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        real = graph_transitivity(H, args.score, threads=_threads(args))
    rep = observation_report(
        H, args.score, args.null_runs, args.seed, gen, threads=_threads(args), result=real
    )
    doc = rep.to_dict()
    doc["metadata"] = {**doc["metadata"], **_header(args)}
    if args.csv_dir:
        os.makedirs(args.csv_dir, exist_ok=True)
        for name, rows in rep.obs3.items():
            if rows is None:
                continue
            with open(os.path.join(args.csv_dir, f"degree_profile_{name}.csv"), "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["degree_lo", "degree_hi", "mean_T", "nodes"])
                for row in rows:
                    w.writerow([row["degree_lo"], row["degree_hi"], repr(row["mean_T"]), row["nodes"]])
        with open(os.path.join(args.csv_dir, "wedge_score_hist_real.csv"), "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["score_lo", "score_hi", "wedges"])
            w.writerows(_histogram(real.wedges.score))
    _emit_json(doc, args.out)
    return EXIT_OK


def cmd_axioms(args) -> int:
    doc = conformance_table(args.measure, args.score, args.trials, args.seed)
    doc["metadata"] = _header(args)
    _emit_json(doc, args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    records: list[BenchRecord] = []
    if args.input:
        H = _load(args)
        records += bench_compare(H, args.score, args.repeats, os.path.basename(args.input))
    if args.generation:
        records += bench_generation(args.generation, args.seed, args.repeats)
    if not records:
        raise UsageError("bench needs --input and/or --generation")
    if args.out in (None, "-"):
        write_bench_csv(records, sys.stdout)
    else:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write_bench_csv(records, fh)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _int_list(text: str) -> list[int]:
    try:
        return [int(float(x)) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypertrans", description="Hypergraph transitivity measurement and generation.")
    p.add_argument("--version", action="version", version=f"hypertrans {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, seed=True, data=True):
        sp.add_argument("--threads", type=int, default=None, help="worker threads (default: HT_THREADS or CPU count)")
        if seed:
            sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        if data:
            sp.add_argument("--format", choices=["edge-list", "nverts-simplices"], default="edge-list")
            sp.add_argument("--keep-duplicates", action="store_true", help="keep repeated and singleton hyperedges")
        sp.add_argument("--score", choices=["coverage", "penalized"], default="penalized")
        sp.add_argument("--out", default=None, help="output path (default: stdout)")

    m = sub.add_parser("measure", help="hypergraph, node and hyperedge transitivity as JSON")
    m.add_argument("--input", required=True)
    m.add_argument("--measure", default="HyperTrans", type=MeasureKind.parse, help="HyperTrans or B1..B9")
    m.add_argument("--sample-rate", type=float, default=1.0)
    m.add_argument("--engine", choices=["auto", "kernel", "python"], default="auto")
    m.add_argument("--wedges-csv", default=None, help="write per-wedge scores: wedge_a,wedge_b,body_size,score")
    common(m)
    m.set_defaults(func=cmd_measure)

    g = sub.add_parser("generate", help="write a synthetic hypergraph as an edge list plus a JSON sidecar")
    g.add_argument("--model", choices=["thera", "naive-thera", "hypercl"], default="thera")
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--sizes", default=None, help="size histogram file ('size count' lines) or inline 'k:count,...'")
    g.add_argument("--sizes-from", default=None, help="take the size distribution of this hypergraph")
    g.add_argument("--input", default=None, help="reference hypergraph for --model hypercl")
    g.add_argument("--community", type=int, default=10)
    g.add_argument("--intra", type=float, default=0.8)
    g.add_argument("--alpha", type=float, default=2.0)
    g.add_argument("--beta", type=int, default=2)
    g.add_argument("--community-rule", choices=["literal", "anchor-block"], default="literal")
    common(g)
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser(
        "analyze",
        help="compare against HyperCL null models",
        description="CSV outputs in --csv-dir: degree_profile_<real|null|generated>.csv "
        "(degree_lo,degree_hi,mean_T,nodes) and wedge_score_hist_real.csv (score_lo,score_hi,wedges).",
    )
    a.add_argument("--input", required=True)
    a.add_argument("--null-runs", type=int, default=10)
    a.add_argument("--generated", default=None, help="optional generated hypergraph to include")
    a.add_argument("--csv-dir", default=None)
    common(a)
    a.set_defaults(func=cmd_analyze)

    x = sub.add_parser("axioms", help="axiom conformance row as JSON")
    x.add_argument("--measure", default="HyperTrans", type=MeasureKind.parse)
    x.add_argument("--trials", type=int, default=1000)
    common(x, data=False)
    x.set_defaults(func=cmd_axioms)

    b = sub.add_parser(
        "bench",
        help="naive vs fast timings and THera generation timings as CSV",
        description="CSV columns: " + ",".join(BenchRecord.FIELDS),
    )
    b.add_argument("--input", default=None)
    b.add_argument("--compare", action="store_true", help="naive vs fast on --input (the default when --input is given)")
    b.add_argument("--generation", type=_int_list, default=None, help="comma-separated hyperedge counts for THera timing")
    b.add_argument("--repeats", type=int, default=3)
    common(b)
    b.set_defaults(func=cmd_bench)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and dispatch; returns the exit status."""
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "threads", None) is not None and args.threads < 1:
            raise UsageError("--threads must be at least 1")
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleParametersError as e:
        print(f"infeasible parameters: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (HypertransError, OSError, UnicodeDecodeError) as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
