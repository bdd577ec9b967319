"""Command-line front door.

Subcommands: screen, rank-promethee, rank-electre, optimize, objectives.
Reports go to standard output; ``--out`` additionally writes them to a
file, and ``--plots`` renders a figure next to that file. Exit codes:
0 success, 1 data or validation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .core import (
    DecisionMatrix,
    PreferenceFunctionSpec,
    PreferenceKind,
    conditions_of,
)
from .data_io import (
    FORMATS,
    load_criteria,
    load_flow_table,
    load_matrix,
    load_pi_matrix,
    load_portfolio,
    write_report,
    write_text_atomic,
)
from .electre import ElectreThresholds, classify
from .errors import McdaError
from .ga import GAConfig, run as run_ga
from .objectives import (
    constraint_violations,
    expected_return,
    penalized_objective,
    portfolio_variance,
)
from .promethee import flows, preference_index_matrix, rank_promethee_i
from .screening import feasible_subset, screen

SEED_ENV_VAR = "LOCUS_MCDA_SEED"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locus-mcda",
        description="Rank location alternatives over weighted, directional "
        "criteria and search for best-compromise profiles.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table", help="report format")
    common.add_argument("--out", type=Path, help="also write the report to this file")
    common.add_argument(
        "--plots",
        action="store_true",
        help="render a PNG figure next to the --out file (requires --out)",
    )

    p = sub.add_parser("screen", parents=[common], help="feasibility-check a matrix")
    p.add_argument("--matrix", required=True, type=Path, help="decision matrix CSV")
    p.add_argument("--config", required=True, type=Path, help="criteria config JSON")

    pref = argparse.ArgumentParser(add_help=False)
    pref.add_argument(
        "--pref-fn",
        choices=[k.value for k in PreferenceKind],
        default=None,
        help="override every criterion's preference function "
        "(default: usual, taken from the config)",
    )
    pref.add_argument("--pref-q", type=float, help="indifference threshold for --pref-fn")
    pref.add_argument("--pref-p", type=float, help="strict-preference threshold for --pref-fn")
    pref.add_argument("--pref-s", type=float, help="Gaussian spread for --pref-fn")

    p = sub.add_parser(
        "rank-promethee", parents=[common, pref], help="rank by outranking flows"
    )
    p.add_argument("--matrix", type=Path, help="decision matrix CSV")
    p.add_argument("--config", type=Path, help="criteria config JSON")
    p.add_argument("--pi", type=Path, help="precomputed preference-index matrix CSV")
    p.add_argument("--flows", type=Path, help="precomputed flow table CSV")
    p.add_argument("--screen", action="store_true", help="drop infeasible alternatives first")
    p.add_argument("--partial", action="store_true", help="append the partial preorder")

    p = sub.add_parser("rank-electre", parents=[common], help="classify pairs by outranking")
    p.add_argument("--matrix", required=True, type=Path)
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--s", type=float, default=0.7, help="concordance level (default 0.7)")
    p.add_argument("--v", type=float, default=0.3, help="veto level (default 0.3)")
    p.add_argument("--screen", action="store_true", help="drop infeasible alternatives first")

    p = sub.add_parser(
        "optimize", parents=[common, pref], help="search for a best-compromise profile"
    )
    p.add_argument("--matrix", required=True, type=Path)
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--seed", type=int, default=None, help=f"RNG seed (default ${SEED_ENV_VAR} or 0)")
    p.add_argument("--pop", type=int, default=50, help="population size (default 50)")
    p.add_argument("--gens", type=int, default=200, help="generations (default 200)")
    p.add_argument("--cx", type=float, default=0.9, help="crossover rate (default 0.9)")
    p.add_argument("--mut", type=float, default=0.05, help="mutation rate (default 0.05)")
    p.add_argument("--elite", type=int, default=2, help="elite carryover (default 2)")
    p.add_argument(
        "--penalize-infeasible",
        action="store_true",
        help="subtract 2 fitness points per violated condition",
    )
    p.add_argument("--no-cache", action="store_true", help="disable fitness memoization")

    p = sub.add_parser("objectives", parents=[common], help="evaluate a mean-variance portfolio")
    p.add_argument("--portfolio", required=True, type=Path, help="portfolio spec JSON")
    p.add_argument("--weights", required=True, help="comma-separated asset weights")
    p.add_argument(
        "--penalty-weight", type=float, default=1000.0, help="penalty per unit violation"
    )

    return parser


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV_VAR)
    return int(env) if env else 0


def _load_ranked_matrix(args: argparse.Namespace) -> DecisionMatrix:
    criteria = load_criteria(args.config)
    criteria = _apply_pref_override(args, criteria)
    matrix = load_matrix(args.matrix, criteria)
    if getattr(args, "screen", False):
        report = screen(matrix, conditions_of(matrix))
        matrix = feasible_subset(matrix, report)
    return matrix


def _apply_pref_override(args: argparse.Namespace, criteria):
    if getattr(args, "pref_fn", None) is None:
        return criteria
    from dataclasses import replace

    spec = PreferenceFunctionSpec(
        kind=PreferenceKind.parse(args.pref_fn),
        q=args.pref_q,
        p=args.pref_p,
        s=args.pref_s,
    )
    return tuple(replace(c, pref_fn=spec) for c in criteria)


def _emit(args: argparse.Namespace, text: str, figure=None) -> None:
    sys.stdout.write(text)
    if args.out is not None:
        write_text_atomic(args.out, text)
        if args.plots and figure is not None:
            kind, render = figure
            render(args.out.with_name(f"{args.out.stem}_{kind}.png"))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "plots", False) and args.out is None:
        parser.exit(2, f"{parser.prog}: error: --plots requires --out\n")
    try:
        return _dispatch(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except McdaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    # Imported lazily: pulling in matplotlib is only worth it with --plots.
    if args.command == "screen":
        criteria = load_criteria(args.config)
        matrix = load_matrix(args.matrix, criteria)
        report = screen(matrix, conditions_of(matrix))
        figure = None
        if args.plots:
            from .plotting import save_screening_figure

            figure = ("screening", lambda path: save_screening_figure(report, path))
        _emit(args, write_report(report, args.format), figure)
        return 0

    if args.command == "rank-promethee":
        modes = [args.matrix is not None or args.config is not None, args.pi is not None, args.flows is not None]
        if sum(modes) != 1:
            parser.exit(
                2,
                f"{parser.prog}: error: give either --matrix with --config, "
                "or --pi, or --flows\n",
            )
        if args.flows is not None:
            flow = load_flow_table(args.flows)
        elif args.pi is not None:
            flow = flows(load_pi_matrix(args.pi))
        else:
            if args.matrix is None or args.config is None:
                parser.exit(2, f"{parser.prog}: error: --matrix and --config go together\n")
            matrix = _load_ranked_matrix(args)
            flow = flows(preference_index_matrix(matrix))
        text = write_report(flow, args.format)
        if args.partial:
            partial = write_report(rank_promethee_i(flow), args.format)
            if args.format == "json":
                import json

                merged = {**json.loads(text), **json.loads(partial)}
                text = json.dumps(merged, indent=2) + "\n"
            else:
                text += "\n" + partial
        figure = None
        if args.plots:
            from .plotting import save_flow_figure

            figure = ("flows", lambda path: save_flow_figure(flow, path))
        _emit(args, text, figure)
        return 0

    if args.command == "rank-electre":
        matrix = _load_ranked_matrix(args)
        table = classify(matrix, ElectreThresholds(s=args.s, v=args.v))
        figure = None
        if args.plots:
            from .plotting import save_relations_figure

            figure = ("relations", lambda path: save_relations_figure(table, path))
        _emit(args, write_report(table, args.format), figure)
        return 0

    if args.command == "optimize":
        criteria = _apply_pref_override(args, load_criteria(args.config))
        matrix = load_matrix(args.matrix, criteria)
        cfg = GAConfig(
            population_size=args.pop,
            generations=args.gens,
            crossover_rate=args.cx,
            mutation_rate=args.mut,
            elitism_count=args.elite,
            seed=_resolve_seed(args.seed),
        )
        conditions = conditions_of(matrix)
        report = run_ga(
            cfg,
            matrix,
            conditions=conditions if args.penalize_infeasible else None,
            use_cache=not args.no_cache,
        )
        figure = None
        if args.plots:
            from .plotting import save_history_figure

            figure = ("history", lambda path: save_history_figure(report, path))
        _emit(args, write_report(report, args.format), figure)
        return 0

    # objectives
    try:
        weights = tuple(float(part) for part in args.weights.split(",") if part.strip())
    except ValueError:
        parser.exit(2, f"{parser.prog}: error: --weights must be comma-separated numbers\n")
    portfolio = load_portfolio(args.portfolio)
    violations = constraint_violations(weights, portfolio)
    payload = {
        "expected_return": expected_return(weights, portfolio),
        "variance": portfolio_variance(weights, portfolio),
        "feasible": not violations,
        "violations": [
            {"constraint": v.constraint, "magnitude": round(v.magnitude, 6), "index": v.index}
            for v in violations
        ],
        "penalized_objective": penalized_objective(
            weights, portfolio, penalty_weight=args.penalty_weight
        ),
    }
    _emit(args, _objectives_text(payload, args.format))
    return 0


def _objectives_text(payload: dict, fmt: str) -> str:
    if fmt == "json":
        import json

        rounded = dict(payload)
        rounded["expected_return"] = round(payload["expected_return"], 6)
        rounded["variance"] = round(payload["variance"], 6)
        rounded["penalized_objective"] = round(payload["penalized_objective"], 6)
        return json.dumps(rounded, indent=2) + "\n"
    lines = [
        ("expected_return", f"{payload['expected_return']:.6f}"),
        ("variance", f"{payload['variance']:.6f}"),
        ("feasible", "yes" if payload["feasible"] else "no"),
        ("penalized_objective", f"{payload['penalized_objective']:.6f}"),
    ]
    for v in payload["violations"]:
        where = f" at index {v['index']}" if v["index"] is not None else ""
        lines.append((f"violation ({v['constraint']}{where})", f"{v['magnitude']:.6f}"))
    if fmt == "csv":
        return "".join(f"{k.replace(' ', '_')},{val}\n" for k, val in lines)
    width = max(len(k) for k, _ in lines)
    return "".join(f"{k.ljust(width)}  {val}\n" for k, val in lines)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
