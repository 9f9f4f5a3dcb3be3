"""Command line: ``python -m gradminer mine ...`` and ``python -m gradminer bench ...``."""
from __future__ import annotations

import argparse
import json
import sys

from .bench import ALGORITHMS, ExperimentSpec, emit_report, render_report, run_algorithm, run_experiments
from .core import DatasetError, load_csv
from .result import ResourceLimitError


def _mine_params(args) -> dict:
    if args.algo == "graank":
        return {"maximal_only": args.maximal_only}
    common = {"max_iter": args.max_iter}
    if args.algo in ("aco-graank", "aco-paraminer"):
        return {**common, "rho": args.rho}
    if args.algo in ("ga", "pso"):
        return {**common, "pc": args.pc, "c1": args.c1, "c2": args.c2, "pop_size": args.pop_size}
    return {}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gradminer", description="Gradual pattern miners and benchmark runner.")
    sub = ap.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mine", help="run one miner on one CSV file")
    m.add_argument("dataset")
    m.add_argument("--algo", choices=ALGORITHMS, default="graank")
    m.add_argument("--min-sup", type=float, default=0.5)
    m.add_argument("--max-iter", type=int, default=None)
    m.add_argument("--rho", type=float, default=None)
    m.add_argument("--pc", type=float, default=None)
    m.add_argument("--c1", type=float, default=None)
    m.add_argument("--c2", type=float, default=None)
    m.add_argument("--pop-size", type=int, default=None)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--maximal-only", action="store_true")
    m.add_argument("--has-id-column", action="store_true")
    m.add_argument("--format", choices=("text", "json"), default="text")
    m.add_argument("--out", default=None)

    b = sub.add_parser("bench", help="run an experiment spec file")
    b.add_argument("spec")
    b.add_argument("--repeats", type=int, default=None)
    b.add_argument("--seed", type=int, default=None, help="seed base")
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.add_argument("--out", default=None)
    b.add_argument("--workers", type=int, default=1)
    return ap


def _mine(args) -> int:
    d = load_csv(args.dataset, has_id_column=args.has_id_column)
    res = run_algorithm(args.algo, d, args.min_sup, args.seed, _mine_params(args))
    if args.maximal_only and args.algo != "graank":
        res = res.maximal()
    if args.format == "json":
        text = json.dumps(res.to_dict(timing=True), indent=2) + "\n"
    else:
        lines = [sp.label(d.attribute_names) for sp in res]
        lines.append(
            f"# {len(res)} pattern(s), {res.iterations} iteration(s), "
            f"{res.candidates_evaluated} candidate(s) evaluated, {res.wall_time:.3f} s"
        )
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _bench(args) -> int:
    spec = ExperimentSpec.from_ini(args.spec)
    if args.repeats is not None:
        spec.repeats = args.repeats
    if args.seed is not None:
        spec.seed_base = args.seed
    report = run_experiments(spec, workers=args.workers)
    if args.out:
        emit_report(report, args.format, args.out)
    else:
        sys.stdout.write(render_report(report, args.format))
    for cell, run in report.failures:
        print(f"FAILED {cell.algorithm} sigma={cell.sigma} run={run.run_index} {cell.dataset}: {run.error}",
              file=sys.stderr)
    return 1 if report.failures else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _mine(args) if args.command == "mine" else _bench(args)
    except (DatasetError, ValueError, FileNotFoundError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
