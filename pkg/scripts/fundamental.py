"""Default-setting run on the 6-vertex instance over several seeds.

    python scripts/fundamental.py --seeds 1..5 --out-dir runs/fundamental
"""

import argparse
from pathlib import Path

from idpqaoa.cli import parse_seeds
from idpqaoa.graph import six_node_graph
from idpqaoa.harness import RunConfig, run_solve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", default="1..5")
    ap.add_argument("--layers", type=int, default=15)
    ap.add_argument("--alpha", type=float, default=0.3)
    ap.add_argument("--penalty", type=float, default=4.5)
    ap.add_argument("--max-iters", type=int, default=10_000)
    ap.add_argument("--shots", type=int, default=10_000)
    ap.add_argument("--out-dir", default="runs/fundamental")
    args = ap.parse_args()

    g = six_node_graph()
    print(f"{'seed':>4} {'correct':>8} {'optimal':>8} {'best cost':>10}  top strings")
    for seed in parse_seeds(args.seeds):
        cfg = RunConfig(
            layers=args.layers,
            alpha=args.alpha,
            penalty=args.penalty,
            max_iterations=args.max_iters,
            shots=args.shots,
            seed=seed,
            output_path=str(Path(args.out_dir) / f"seed{seed}.json"),
        )
        rep = run_solve(cfg, graph=g)
        top = " ".join(f"{z}:{p:.4f}" for z, p in rep.score.top_strings[:4])
        print(f"{seed:>4} {rep.score.correct_probability:8.4f} {rep.score.optimal_probability:8.4f} "
              f"{rep.optimization.best_cost:10.4f}  {top}")


if __name__ == "__main__":
    main()
