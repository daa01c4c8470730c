"""Layer / penalty / iteration-budget sweeps on the 6-vertex instance.

    python scripts/robustness.py --axis layers            # q in {10, 15, 20}
    python scripts/robustness.py --axis penalty           # P in {3, 4.5, 6, 9}
    python scripts/robustness.py --axis max_iterations    # {100, 500, 1000, 10000}
    python scripts/robustness.py --axis alpha             # {0.3, 0.5, 0.7}
    python scripts/robustness.py --full                   # all 144 combinations (slow)
"""

import argparse
import csv
import dataclasses
import itertools
from pathlib import Path
from statistics import mean

from idpqaoa.cli import parse_seeds
from idpqaoa.graph import six_node_graph
from idpqaoa.harness import RunConfig, run_solve, run_sweep

GRIDS = {
    "layers": [10, 15, 20],
    "alpha": [0.3, 0.5, 0.7],
    "penalty": [3.0, 4.5, 6.0, 9.0],
    "max_iterations": [100, 500, 1000, 10_000],
}
OPTIMAL = {"011001", "100110"}


def summarize(rows, axis):
    print(f"{axis:>15} {'correct':>8} {'optimal':>8}  (mean over seeds)")
    for value in dict.fromkeys(r["value"] for r in rows):
        cell = [r for r in rows if r["value"] == value and r["error"] is None]
        if cell:
            print(f"{value:>15} {mean(r['correct'] for r in cell):8.4f} {mean(r['optimal'] for r in cell):8.4f}")


def full_grid(base, seed, out_dir, graph):
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "full_grid.csv"
    both = one = 0
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["layers", "alpha", "penalty", "max_iterations", "correct", "optimal", "top1", "top2"])
        for combo in itertools.product(*GRIDS.values()):
            cfg = dataclasses.replace(base, **dict(zip(GRIDS, combo)), seed=seed)
            rep = run_solve(cfg, graph=graph)
            top2 = [z for z, _ in rep.score.top_strings[:2]]
            both += set(top2) == OPTIMAL
            one += len(set(top2) & OPTIMAL) == 1
            writer.writerow([*combo, rep.score.correct_probability, rep.score.optimal_probability, *top2])
            fh.flush()
    print(f"both optima top-2 in {both}/144 settings; exactly one in {one}/144 (written to {path})")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--axis", choices=sorted(GRIDS), default="max_iterations")
    ap.add_argument("--seeds", default="1..5")
    ap.add_argument("--shots", type=int, default=10_000)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--full", action="store_true", help="run the 144-combination grid with the first seed")
    ap.add_argument("--out-dir", default="runs/robustness")
    args = ap.parse_args()

    graph = six_node_graph()
    base = RunConfig(shots=args.shots)
    seeds = parse_seeds(args.seeds)
    if args.full:
        full_grid(base, seeds[0], Path(args.out_dir), graph)
        return
    rows = run_sweep(base, args.axis, GRIDS[args.axis], seeds, graph, args.out_dir, args.workers)
    summarize(rows, args.axis)


if __name__ == "__main__":
    main()
