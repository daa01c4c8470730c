"""Command line entry point: ``solve``, ``sweep``, ``oracle`` and ``qubo``.

Exit codes: 0 success, 1 usage error, 2 input error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from .graph import GraphError, read_graph
from .harness import RunConfig, StepError, normalize_axis, run_solve, run_sweep
from .oracle import brute_force_ids
from .qubo import build_qubo, export_qubo

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

_INPUT_STEPS = {"parse"}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_seeds(text: str) -> List[int]:
    """``"1..5"`` (inclusive) or a comma list ``"1,4,9"``."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo_i, hi_i = int(lo), int(hi)
        if hi_i < lo_i:
            raise ValueError(f"empty seed range {text!r}")
        return list(range(lo_i, hi_i + 1))
    return [int(s) for s in text.split(",") if s.strip()]


def parse_values(text: str) -> List[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="edge-list file ('n m' header then 'u v' lines)")
    p.add_argument("--layers", type=int, default=15)
    p.add_argument("--alpha", type=float, default=0.3)
    p.add_argument("--penalty", type=float, default=None, help="default: 0.75 * vertex count")
    p.add_argument("--max-iters", dest="max_iterations", type=int, default=10_000)
    p.add_argument("--shots", type=int, default=10_000, help="0 selects exact probabilities")
    p.add_argument("--ramp-scale", type=float, default=0.75)
    p.add_argument("--initial-step", type=float, default=0.5)
    p.add_argument("--tol", dest="function_tolerance", type=float, default=1e-8)
    p.add_argument("--method", choices=("cobyla", "nelder-mead"), default="cobyla")
    p.add_argument("--seed-policy", choices=("fixed", "advance"), default="fixed")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="idpqaoa", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    solve = sub.add_parser("solve", help="optimise QAOA on one graph and write a report")
    _add_run_options(solve)
    solve.add_argument("--seed", type=int, default=7)
    solve.add_argument("--out", default=None, help="report JSON path (cost trace goes to <stem>.costs.csv)")

    sweep = sub.add_parser("sweep", help="vary one parameter over several seeds")
    _add_run_options(sweep)
    sweep.add_argument("--axis", required=True, help="layers | alpha | penalty | max-iters")
    sweep.add_argument("--values", required=True, help="comma-separated axis values")
    sweep.add_argument("--seeds", default="1..5", help="'1..5' or '1,2,3'")
    sweep.add_argument("--out-dir", default="sweep_out")
    sweep.add_argument("--workers", type=int, default=1)

    oracle = sub.add_parser("oracle", help="print every independent dominating set")
    oracle.add_argument("--graph", required=True)

    qubo = sub.add_parser("qubo", help="export the penalty QUBO as text")
    qubo.add_argument("--graph", required=True)
    qubo.add_argument("--penalty", type=float, default=None)
    return parser


def _config(args: argparse.Namespace, **extra) -> RunConfig:
    return RunConfig(
        graph_path=args.graph,
        layers=args.layers,
        alpha=args.alpha,
        penalty=args.penalty,
        max_iterations=args.max_iterations,
        shots=args.shots,
        ramp_scale=args.ramp_scale,
        initial_step=args.initial_step,
        function_tolerance=args.function_tolerance,
        method=args.method,
        seed_policy=args.seed_policy,
        **extra,
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    report = run_solve(_config(args, seed=args.seed, output_path=args.out))
    summary = {
        "solution": sorted(report.solution()),
        "bitstring": report.best_string,
        "correct_probability": report.score.correct_probability,
        "optimal_probability": report.score.optimal_probability,
        "top_strings": [list(t) for t in report.score.top_strings[:5]],
        "best_cost": report.optimization.best_cost,
        "evaluations": report.optimization.evaluations,
    }
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    axis = normalize_axis(args.axis)
    seeds = parse_seeds(args.seeds)
    graph = read_graph(args.graph)
    rows = run_sweep(_config(args), axis, parse_values(args.values), seeds, graph, args.out_dir, args.workers)
    for row in rows:
        if row["error"]:
            print(f"{axis}={row['value']} seed={row['seed']} ERROR {row['error']}")
        else:
            print(f"{axis}={row['value']} seed={row['seed']} correct={row['correct']:.4f} optimal={row['optimal']:.4f}")
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    catalog = brute_force_ids(g)
    print(json.dumps({
        "minimum_size": catalog.minimum_size,
        "optimal_sets": [sorted(s) for s in catalog.optimal_sets],
        "all_ids": [sorted(s) for s in catalog.all_ids],
    }, indent=2))
    return EXIT_OK


def _cmd_qubo(args: argparse.Namespace) -> int:
    sys.stdout.write(export_qubo(build_qubo(read_graph(args.graph), args.penalty)))
    return EXIT_OK


_COMMANDS = {"solve": _cmd_solve, "sweep": _cmd_sweep, "oracle": _cmd_oracle, "qubo": _cmd_qubo}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except StepError as exc:
        print(f"error in step {exc.step}: {exc.cause}", file=sys.stderr)
        if exc.step in _INPUT_STEPS or isinstance(exc.cause, (GraphError, OSError)):
            return EXIT_INPUT
        return EXIT_NUMERIC
    except (GraphError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
