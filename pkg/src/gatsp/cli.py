"""Command-line entry point.

Three subcommands: ``solve`` runs the solver once and prints the best
tour, ``compare`` runs the seeded multi-run benchmark of the hybrid
solver against the plain-GA baseline and writes the averaged convergence
curves as CSV, ``validate`` parses an instance and reports its shape.

Data goes to the requested file or stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bench import ExperimentConfig, emit_convergence_csv, emit_per_run_csv, run_experiment
from .engine import GaParams, run
from .tour import render_tour
from .tsplib import Instance, TsplibParseError, load_instance, parse_instance


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--instance", required=True,
                        help="TSPLIB instance file; '-' reads standard input")
    parser.add_argument("--generations", type=int, default=1000,
                        help="generations per run (default %(default)s)")
    parser.add_argument("--pop-size", type=int, default=256,
                        help="population size (default %(default)s)")
    parser.add_argument("--pm", type=float, default=0.05,
                        help="per-position mutation probability (default %(default)s)")
    parser.add_argument("--pm2", type=float, default=0.02,
                        help="segment-reversal selection probability (default %(default)s)")
    parser.add_argument("--crossover", choices=("pmx", "ox", "cx"), default="pmx",
                        help="crossover operator (default %(default)s)")
    parser.add_argument("--seed", type=int, default=1,
                        help="base random seed (default %(default)s)")
    parser.add_argument("--no-l1", action="store_true",
                        help="disable the four-city window pass")
    parser.add_argument("--no-l2", action="store_true",
                        help="disable the probabilistic segment reversal")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gatsp",
                                     description="Hybrid GA solver for TSP/ATSP instances")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="one seeded run; print best length and tour")
    _add_solver_flags(solve)
    solve.add_argument("--target-length", type=float, default=None,
                       help="stop early once the best tour is at most this long")

    compare = sub.add_parser("compare",
                             help="benchmark hybrid vs conventional GA, write CSV curves")
    _add_solver_flags(compare)
    compare.add_argument("--runs", type=int, default=30,
                         help="seeded runs per variant (default %(default)s)")
    compare.add_argument("--out", default=None,
                         help="CSV output path (default: standard output)")
    compare.add_argument("--per-run-out", default=None,
                         help="also dump every run's full series to this CSV")
    compare.add_argument("--jobs", type=int, default=1,
                         help="parallel worker processes (default %(default)s)")

    validate = sub.add_parser("validate", help="parse an instance and report its shape")
    validate.add_argument("--instance", required=True,
                          help="TSPLIB instance file; '-' reads standard input")
    return parser


def _read_instance(path: str) -> Instance:
    if path == "-":
        return parse_instance(sys.stdin.read())
    return load_instance(path)


def _params_from(args: argparse.Namespace, **overrides) -> GaParams:
    return GaParams(
        pop_size=args.pop_size,
        p_m=args.pm,
        p_m2=args.pm2,
        generations=args.generations,
        crossover=args.crossover,
        l1_enabled=not args.no_l1,
        l2_enabled=not args.no_l2,
        seed=args.seed,
        **overrides,
    ).validate()


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = _read_instance(args.instance)
    params = _params_from(args, target_length=args.target_length)
    result = run(instance, params)
    print(f"generations: {len(result.stats_series)}  wall time: {result.wall_time:.2f}s",
          file=sys.stderr)
    print(f"best length: {result.final_best_length}")
    print(f"tour: {render_tour(result.final_best)}")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    instance = _read_instance(args.instance)
    cfg = ExperimentConfig(
        instance_path=args.instance,
        runs=args.runs,
        params=_params_from(args),
        output_path=args.out,
        per_run_path=args.per_run_out,
        jobs=args.jobs,
    )
    report = run_experiment(cfg, instance=instance)
    for v in report.variants:
        s = v.summary()
        print(
            f"{s['label']}: final best mean={s['final_mean']:.2f} "
            f"min={s['final_min']} max={s['final_max']} stddev={s['final_stddev']:.2f} "
            f"mean wall time={s['mean_wall_time']:.2f}s",
            file=sys.stderr,
        )
    labels = {v.label for v in report.variants}
    if {"conventional", "hybrid"} <= labels:
        ratio = report.variant("hybrid").mean_curve[-1] / report.variant("conventional").mean_curve[-1]
        print(f"hybrid/conventional final mean ratio: {ratio:.3f}", file=sys.stderr)
    if args.out:
        with open(args.out, "w") as sink:
            emit_convergence_csv(report, sink)
    else:
        emit_convergence_csv(report, sys.stdout)
    if args.per_run_out:
        with open(args.per_run_out, "w") as sink:
            emit_per_run_csv(report, sink, base_seed=args.seed)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    instance = _read_instance(args.instance)
    weights = instance.weights
    integral = "integer" if np.issubdtype(weights.dtype, np.integer) else "real"
    print(f"name: {instance.name or '(unnamed)'}")
    print(f"cities: {instance.n}")
    print(f"kind: {instance.kind}")
    print(f"weights: {integral}, min {weights.min()}, max {weights.max()}")
    return 0


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:  # argparse usage errors carry their own code
        return int(exit_.code or 0)
    handlers = {"solve": _cmd_solve, "compare": _cmd_compare, "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except (TsplibParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: cannot read or write {getattr(exc, 'filename', '')!r}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())
