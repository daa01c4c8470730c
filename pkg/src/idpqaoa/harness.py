"""End-to-end solve pipeline, parameter sweeps and report serialisation."""

from __future__ import annotations

import csv
import dataclasses
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from .graph import Graph, VertexSet, is_independent_dominating_set, read_graph
from .ising import energy_table, qubo_to_ising
from .oracle import IdsCatalog, ScoreReport, brute_force_ids, marginalize, score_distribution
from .qubo import build_qubo, default_penalty
from .simulator import AnsatzParams, SampleDistribution, evolve, sample
from .variational import OptimizerConfig, OptResult, initial_params, minimize, qaoa_objective

log = logging.getLogger(__name__)

SWEEP_AXES = ("layers", "alpha", "penalty", "max_iterations")
_AXIS_ALIASES = {"max-iters": "max_iterations", "max_iters": "max_iterations", "q": "layers", "p": "penalty"}


class StepError(RuntimeError):
    """A pipeline step failed; ``step`` names it and ``__cause__`` holds the error."""

    def __init__(self, step: str, cause: BaseException) -> None:
        super().__init__(f"{step}: {cause}")
        self.step = step
        self.cause = cause


@dataclass
class RunConfig:
    graph_path: Optional[str] = None
    layers: int = 15
    alpha: float = 0.3
    penalty: Optional[float] = None  # None -> 0.75 * |V|
    max_iterations: int = 10_000
    shots: int = 10_000
    seed: int = 7
    ramp_scale: float = 0.75
    output_path: Optional[str] = None
    function_tolerance: float = 1e-8
    initial_step: float = 0.5
    method: str = "cobyla"
    seed_policy: str = "fixed"

    def __post_init__(self) -> None:
        if self.layers < 1:
            raise ValueError("layers must be >= 1")
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must lie in (0, 1]")
        if self.penalty is not None and self.penalty <= 0:
            raise ValueError("penalty must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.shots < 0:
            raise ValueError("shots must be >= 0")

    def optimizer(self) -> OptimizerConfig:
        return OptimizerConfig(self.max_iterations, self.function_tolerance, self.initial_step, self.method)

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


@dataclass
class RunReport:
    config: Dict[str, Any]
    graph: Graph
    penalty: float
    variable_count: int
    slack_registry: Dict[int, tuple]
    optimization: OptResult
    distribution: SampleDistribution
    score: ScoreReport
    catalog: IdsCatalog
    wall_time: float = 0.0

    @property
    def marginal(self) -> Dict[str, float]:
        return marginalize(self.distribution, self.graph.vertex_count)

    @property
    def best_string(self) -> str:
        return self.score.top_strings[0][0]

    def solution(self) -> VertexSet:
        return decode_bitstring(self.best_string, self.graph.vertex_count)

    def cost_rows(self) -> List[tuple]:
        best = self.optimization.best_so_far()
        return [(i, v, float(b)) for (i, v), b in zip(self.optimization.cost_trace, best)]

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        opt = self.optimization
        solution = sorted(self.solution())
        dominating, independent = is_independent_dominating_set(self.graph, solution)
        out = {
            "config": self.config,
            "graph": {"vertex_count": self.graph.vertex_count, "edges": [list(e) for e in self.graph.sorted_edges()]},
            "qubo": {
                "variable_count": self.variable_count,
                "penalty": self.penalty,
                "slack_registry": {str(k): list(v) for k, v in sorted(self.slack_registry.items())},
            },
            "optimization": {
                "best_params": {"gammas": list(opt.best_params.gammas), "betas": list(opt.best_params.betas)},
                "initial_cost": opt.initial_cost,
                "best_cost": opt.best_cost,
                "evaluations": opt.evaluations,
                "terminated_by": opt.terminated_by.value,
            },
            "cost_trace": [list(row) for row in self.cost_rows()],
            "distribution": {
                "total_shots": self.distribution.total_shots,
                "weights": dict(sorted(self.distribution.weights.items())),
            },
            "marginal": dict(sorted(self.marginal.items())),
            "score": {
                "correct_probability": self.score.correct_probability,
                "optimal_probability": self.score.optimal_probability,
                "top_strings": [list(t) for t in self.score.top_strings],
            },
            "catalog": self.catalog.summary(),
            "solution": {
                "bitstring": self.best_string,
                "vertex_set": solution,
                "dominating": dominating,
                "independent": independent,
            },
        }
        if include_timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2)

    def write(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json() + "\n", encoding="utf-8")
        with open(path.with_suffix(".costs.csv"), "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iteration", "objective", "best_so_far"])
            writer.writerows(self.cost_rows())


def decode_bitstring(z: str, vertex_count: int) -> VertexSet:
    """Vertices whose bit is set among the first ``vertex_count`` positions."""
    if len(z) < vertex_count:
        raise ValueError(f"bit string {z!r} shorter than vertex count {vertex_count}")
    return frozenset(i for i in range(vertex_count) if z[i] == "1")


def _step(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except Exception as exc:  # noqa: BLE001 - re-raised with the step name
        raise StepError(name, exc) from exc


def run_solve(cfg: RunConfig, graph: Graph | None = None) -> RunReport:
    """Graph -> QUBO -> Ising -> optimise QAOA -> sample -> score."""
    start = time.perf_counter()
    if graph is None:
        if cfg.graph_path is None:
            raise StepError("parse", ValueError("no graph given"))
        graph = _step("parse", read_graph, cfg.graph_path)
    penalty = cfg.penalty if cfg.penalty is not None else default_penalty(graph)

    model = _step("build_qubo", build_qubo, graph, penalty)
    hamiltonian = _step("qubo_to_ising", qubo_to_ising, model)
    table = _step("energy_table", energy_table, hamiltonian)
    init = _step("initial_params", initial_params, cfg.layers, cfg.ramp_scale)
    objective = _step(
        "objective", qaoa_objective, table, cfg.layers, cfg.shots, cfg.alpha, cfg.seed, cfg.seed_policy
    )
    log.info("optimising %d parameters over %d qubits", 2 * cfg.layers, table.qubit_count)
    result = _step("minimize", minimize, objective, init, cfg.optimizer())
    state = _step("evolve", evolve, table, result.best_params)
    dist = _step("sample", sample, state, cfg.shots, cfg.seed, 1)
    catalog = _step("oracle", brute_force_ids, graph)
    score = _step("score", score_distribution, dist, graph, catalog)

    report = RunReport(
        config=cfg.to_dict(),
        graph=graph,
        penalty=penalty,
        variable_count=model.variable_count,
        slack_registry=dict(model.slack_registry),
        optimization=result,
        distribution=dist,
        score=score,
        catalog=catalog,
        wall_time=time.perf_counter() - start,
    )
    if cfg.output_path:
        report.write(cfg.output_path)
    return report


def normalize_axis(axis: str) -> str:
    axis = _AXIS_ALIASES.get(axis, axis)
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")
    return axis


def _cast(axis: str, value):
    return int(value) if axis in ("layers", "max_iterations") else float(value)


def _run_cell(base: RunConfig, graph: Graph | None, axis: str, value, seed: int) -> Dict[str, Any]:
    row: Dict[str, Any] = {"axis": axis, "value": value, "seed": seed}
    try:
        cfg = dataclasses.replace(base, **{axis: value}, seed=seed, output_path=None)
        report = run_solve(cfg, graph)
    except Exception as exc:  # noqa: BLE001 - failures are recorded per cell
        row.update(correct=None, optimal=None, top1=None, top2=None, best_cost=None, error=str(exc))
        return row
    top = report.score.top_strings
    row.update(
        correct=report.score.correct_probability,
        optimal=report.score.optimal_probability,
        top1=top[0][0] if top else None,
        top2=top[1][0] if len(top) > 1 else None,
        best_cost=report.optimization.best_cost,
        error=None,
    )
    return row


def run_sweep(
    base: RunConfig,
    axis: str,
    values: Iterable,
    seeds: Sequence[int],
    graph: Graph | None = None,
    out_dir: str | Path | None = None,
    workers: int = 1,
) -> List[Dict[str, Any]]:
    """Run every (value, seed) cell; seeds are shared across values."""
    axis = normalize_axis(axis)
    cells = [(_cast(axis, v), s) for v in values for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            futures = [pool.submit(_run_cell, base, graph, axis, v, s) for v, s in cells]
            rows = [f.result() for f in futures]
    else:
        rows = [_run_cell(base, graph, axis, v, s) for v, s in cells]
    if out_dir is not None:
        write_sweep(rows, out_dir, axis)
    return rows


def write_sweep(rows: List[Dict[str, Any]], out_dir: str | Path, axis: str) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fields = ["axis", "value", "seed", "correct", "optimal", "top1", "top2", "best_cost", "error"]
    with open(out_dir / f"sweep_{axis}.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    (out_dir / f"sweep_{axis}.json").write_text(json.dumps(rows, indent=2) + "\n", encoding="utf-8")


def load_report(path: str | Path) -> Dict[str, Any]:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def rescore_report(data: Dict[str, Any]) -> ScoreReport:
    """Recompute the score from a serialised report's distribution."""
    graph = Graph.from_edges(data["graph"]["vertex_count"], [tuple(e) for e in data["graph"]["edges"]])
    dist = SampleDistribution(data["distribution"]["total_shots"], data["distribution"]["weights"])
    return score_distribution(dist, graph, brute_force_ids(graph))


def params_from_report(data: Dict[str, Any]) -> AnsatzParams:
    p = data["optimization"]["best_params"]
    return AnsatzParams(p["gammas"], p["betas"])
