"""Command-line interface.

Subcommands: ``simulate-upper``, ``simulate-lower``, ``verify-lemma``,
``chernoff``, ``bounds``, ``select``.  Human-readable summaries go to stdout;
the structured JSON report is written to ``--json PATH`` when given and to
stdout otherwise.  With a fixed ``--seed`` the JSON is byte-identical across
runs.  Exit codes: 0 success, 1 domain or parse error, 2 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import (BoundParams, lower_size_threshold, size_lower_bound,
                     size_upper_bound, upper_size_threshold)
from .errors import BudgetError
from .features import load_csv, select_features
from .harness import (ExperimentConfig, run_chernoff_check, run_lemma_verification,
                      run_lower_bound_experiment, run_upper_bound_experiment)
from .instance import ConflictSpec

SCHEMA_VERSION = 1


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; the CLI contract wants 1
    def error(self, message):
        raise _UsageError(message)


def _common_flags(parser: argparse.ArgumentParser, trials_default: int | None = None):
    parser.add_argument("--seed", type=int, default=0, help="master RNG seed (default 0)")
    parser.add_argument("--json", metavar="PATH", default=None,
                        help="write the JSON report to PATH instead of stdout")
    if trials_default is not None:
        parser.add_argument("--trials", type=int, default=trials_default,
                            help=f"number of Monte Carlo trials (default {trials_default})")


def _conflict_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--conflict", choices=["none", "uniform-k"], default="none",
                        help="conflict-set law (default none)")
    parser.add_argument("--k", type=int, default=0,
                        help="partners per vertex for uniform-k (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="niceset",
                     description="Nice (low-redundancy) subset model: solvers, "
                                 "bound checks, and feature selection.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    up = sub.add_parser("simulate-upper", help="Monte Carlo check of the size upper bound")
    up.add_argument("--m", type=int, required=True)
    up.add_argument("--p", type=float, required=True)
    up.add_argument("--gamma", type=float, default=1.0)
    up.add_argument("--delta", type=float, default=0.25)
    up.add_argument("--solver", choices=["exact", "greedy", "randomized"], default="exact")
    _conflict_flags(up)
    _common_flags(up, trials_default=100)

    lo = sub.add_parser("simulate-lower", help="Monte Carlo check of the size lower bound")
    lo.add_argument("--m", type=int, required=True)
    lo.add_argument("--p", type=float, required=True)
    lo.add_argument("--gamma", type=float, default=1.0)
    lo.add_argument("--delta", type=float, default=0.25)
    lo.add_argument("--solver", choices=["exact", "greedy", "randomized"], default="exact")
    _conflict_flags(lo)
    _common_flags(lo, trials_default=100)

    lem = sub.add_parser("verify-lemma",
                         help="existence sweep for mutually good constrained sets")
    lem.add_argument("--count", type=int, default=500, help="systems to generate")
    lem.add_argument("--n-max", type=int, default=8, help="largest universe size")
    _common_flags(lem)

    ch = sub.add_parser("chernoff", help="empirical Bernoulli-sum deviation check")
    ch.add_argument("--r", type=int, required=True, help="summands per trial")
    ch.add_argument("--p", type=float, required=True, help="Bernoulli success probability")
    ch.add_argument("--gamma", type=float, default=0.5, help="relative deviation, in (0, 1/2]")
    _common_flags(ch, trials_default=100_000)

    bo = sub.add_parser("bounds", help="evaluate the closed-form size bounds")
    bo.add_argument("--m", type=int, required=True)
    bo.add_argument("--p", type=float, required=True)
    bo.add_argument("--gamma", type=float, default=1.0)
    bo.add_argument("--delta", type=float, default=0.25)
    bo.add_argument("--tau", type=float, default=1.0)
    _common_flags(bo)

    se = sub.add_parser("select", help="select a nice feature subset from a CSV")
    se.add_argument("--input", required=True, help="CSV file of numeric features")
    se.add_argument("--lambda-c", type=float, required=True,
                    help="absolute correlation threshold, in (0, 1]")
    se.add_argument("--lambda-mc", type=float, required=True,
                    help="VIF threshold, > 1")
    se.add_argument("--k-top", type=int, default=3,
                    help="conflict partners per flagged feature (default 3)")
    se.add_argument("--method", choices=["exact", "greedy", "randomized"], default="exact")
    se.add_argument("--delimiter", default=",")
    se.add_argument("--no-header", action="store_true",
                    help="the CSV has no header row; names become f1..fm")
    se.add_argument("--instance-json", metavar="PATH", default=None,
                    help="also write the derived instance as JSON")
    _common_flags(se)
    return parser


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _emit(report: dict, args, lines: list[str]) -> None:
    for line in lines:
        print(line)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.json:
        with open(args.json, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_simulate(args, which: str) -> None:
    spec = (ConflictSpec.uniform(args.k) if args.conflict == "uniform-k"
            else ConflictSpec.none())
    cfg = ExperimentConfig(m=args.m, p=args.p, gamma=args.gamma, delta=args.delta,
                           conflicts=spec, trials=args.trials, seed=args.seed,
                           solver=args.solver)
    run = run_upper_bound_experiment if which == "upper" else run_lower_bound_experiment
    rep = run(cfg)
    if which == "upper":
        lines = [
            f"threshold (upper): {rep.threshold_upper}",
            f"fraction of {rep.trials} trials at or above it: {_fmt(rep.frac_exceed_upper)}"
            f" (stderr {_fmt(rep.stderr_exceed_upper)})",
            f"claimed failure probability: {_fmt(rep.claimed_upper_failure)}",
        ]
    else:
        lines = [
            f"threshold (lower, clamped to >= 1): {rep.threshold_lower}",
            f"fraction of {rep.trials} trials below it: {_fmt(rep.frac_below_lower)}"
            f" (stderr {_fmt(rep.stderr_below_lower)})",
            f"claimed failure probability: {_fmt(rep.claimed_lower_failure)}",
            f"tau estimate: {_fmt(rep.tau_estimate)} (std {_fmt(rep.tau_std)})",
        ]
    _emit({"schema": SCHEMA_VERSION, "kind": f"simulate-{which}", **rep.to_dict()},
          args, lines)


def _cmd_verify_lemma(args) -> None:
    rep = run_lemma_verification(count=args.count, n_max=args.n_max, seed=args.seed)
    lines = [
        f"systems checked: {rep.systems_checked}",
        f"existence conditions fired: {rep.conditions_fired}",
        f"{len(rep.counterexamples)} counterexamples",
    ]
    _emit({"schema": SCHEMA_VERSION, "kind": "verify-lemma", **rep.to_dict()}, args, lines)


def _cmd_chernoff(args) -> None:
    rep = run_chernoff_check(r=args.r, bernoulli_p=args.p, gamma=args.gamma,
                             trials=args.trials, seed=args.seed)
    lines = [
        f"empirical deviation frequency: {_fmt(rep.empirical)} (stderr {_fmt(rep.stderr)})",
        f"closed-form bound: {_fmt(rep.bound)}",
        f"exact binomial tail: {_fmt(rep.exact_tail)}",
        f"within bound: {rep.within_bound}; consistent with exact tail: "
        f"{rep.consistent_with_exact}",
    ]
    _emit({"schema": SCHEMA_VERSION, "kind": "chernoff", **rep.to_dict()}, args, lines)


def _cmd_bounds(args) -> None:
    params = BoundParams(m=args.m, p=args.p, gamma=args.gamma, delta=args.delta,
                         tau=args.tau)
    upper = size_upper_bound(params)
    lower = size_lower_bound(params)
    report = {
        "schema": SCHEMA_VERSION, "kind": "bounds",
        "m": args.m, "p": args.p, "gamma": args.gamma, "delta": args.delta,
        "tau": args.tau,
        "upper": {"value": upper.value, "failure_prob": upper.failure_prob,
                  "threshold": upper_size_threshold(args.m, args.p, args.gamma)},
        "lower": {"value": lower.value, "failure_prob": lower.failure_prob,
                  "threshold": lower_size_threshold(args.m, args.p, args.delta, args.tau)},
    }
    lines = [
        f"size upper bound: {_fmt(upper.value)} (failure probability {_fmt(upper.failure_prob)})",
        f"size lower bound: {_fmt(lower.value)} (failure probability {_fmt(lower.failure_prob)})",
        f"integer thresholds: upper {report['upper']['threshold']}, "
        f"lower {report['lower']['threshold']}",
    ]
    _emit(report, args, lines)


def _cmd_select(args) -> None:
    fm = load_csv(args.input, delimiter=args.delimiter, has_header=not args.no_header)
    report = select_features(fm, lambda_c=args.lambda_c, lambda_mc=args.lambda_mc,
                             k_top=args.k_top, method=args.method, seed=args.seed)
    if args.instance_json:
        from .features import build_instance
        inst = build_instance(fm, args.lambda_c, args.lambda_mc, args.k_top)
        with open(args.instance_json, "w", encoding="utf-8") as handle:
            handle.write(inst.to_json() + "\n")
    lines = [
        f"selected {len(report.selected)} of {fm.m} features: "
        + ", ".join(report.selected),
        f"edges: {report.edge_count}; conflict sizes max {report.conflict_max}, "
        f"mean {_fmt(report.conflict_mean)}; witness checked: {report.witness_checked}",
    ]
    _emit({"schema": SCHEMA_VERSION, "kind": "select", "seed": args.seed,
           **report.to_dict()}, args, lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            print("error: a subcommand is required", file=sys.stderr)
            return 1
        handler = {
            "simulate-upper": lambda a: _cmd_simulate(a, "upper"),
            "simulate-lower": lambda a: _cmd_simulate(a, "lower"),
            "verify-lemma": _cmd_verify_lemma,
            "chernoff": _cmd_chernoff,
            "bounds": _cmd_bounds,
            "select": _cmd_select,
        }[args.command]
        handler(args)
        return 0
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
