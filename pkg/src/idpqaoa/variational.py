"""CVaR objective, parameter initialisation and the classical outer loop."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy import optimize

from .ising import EnergyTable
from .simulator import (
    AnsatzParams,
    SampleDistribution,
    _mixer_inplace,
    _phase_inplace,
    make_rng,
    sample_counts,
)


class NonFiniteObjectiveError(ArithmeticError):
    def __init__(self, params: np.ndarray, value: float) -> None:
        super().__init__(f"objective returned {value!r} at {list(params)!r}")
        self.params = np.array(params)
        self.value = value


@dataclass(frozen=True)
class CvarConfig:
    alpha: float = 0.3

    def __post_init__(self) -> None:
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")


@dataclass(frozen=True)
class OptimizerConfig:
    max_iterations: int = 10_000
    function_tolerance: float = 1e-8
    initial_step: float = 0.5
    method: str = "cobyla"

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if self.function_tolerance <= 0 or self.initial_step <= 0:
            raise ValueError("tolerance and initial step must be positive")
        if self.method not in ("cobyla", "nelder-mead"):
            raise ValueError(f"unknown method {self.method!r}")


class Termination(str, enum.Enum):
    MAX_ITERATIONS = "max_iterations"
    TOLERANCE = "tolerance"


@dataclass
class OptResult:
    best_params: AnsatzParams
    best_cost: float
    cost_trace: List[Tuple[int, float]]
    evaluations: int
    terminated_by: Termination
    initial_cost: float = field(init=False)

    def __post_init__(self) -> None:
        self.initial_cost = self.cost_trace[0][1]

    def best_so_far(self) -> np.ndarray:
        return np.minimum.accumulate([v for _, v in self.cost_trace])


# -- CVaR ---------------------------------------------------------------------

def cvar_from_arrays(masses: np.ndarray, energies: np.ndarray, alpha: float, fractional: bool = True) -> float:
    """CVaR of a discrete distribution given aligned mass and energy arrays.

    Outcomes are taken lowest energy first until ``alpha`` mass is covered.
    With ``fractional`` the boundary outcome contributes only the mass needed
    to reach ``alpha``; otherwise it is included whole and the mean is taken
    over the covered mass.
    """
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    keep = masses > 0
    masses, energies = masses[keep], energies[keep]
    if masses.size == 0:
        raise ValueError("empty distribution")
    order = np.argsort(energies, kind="stable")
    return _cvar_sorted(masses[order], energies[order], alpha, fractional)


def _cvar_sorted(masses: np.ndarray, energies: np.ndarray, alpha: float, fractional: bool) -> float:
    total = masses.sum()
    target = alpha * total
    before = np.cumsum(masses) - masses
    if fractional:
        taken = np.clip(target - before, 0.0, masses)
        return float(np.dot(taken, energies) / target)
    taken = np.where(before < target, masses, 0.0)
    return float(np.dot(taken, energies) / taken.sum())


def cvar(dist: SampleDistribution, table: EnergyTable, alpha: float, fractional: bool = True) -> float:
    if not dist.weights:
        raise ValueError("empty distribution")
    idx = np.fromiter((int(z, 2) for z in dist.weights), dtype=np.int64, count=len(dist.weights))
    masses = np.fromiter(dist.weights.values(), dtype=float, count=len(dist.weights))
    return cvar_from_arrays(masses, table.energies[idx], alpha, fractional)


# -- initialisation ---------------------------------------------------------

def initial_params(q: int, ramp_scale: float = 0.75) -> AnsatzParams:
    """Linear annealing ramp: gammas rise to ``ramp_scale``, betas fall to 0."""
    if q < 1:
        raise ValueError("need at least one layer")
    if ramp_scale <= 0:
        raise ValueError("ramp_scale must be positive")
    frac = [k / q for k in range(1, q + 1)]
    return AnsatzParams([f * ramp_scale for f in frac], [(1 - f) * ramp_scale for f in frac])


# -- outer loop -------------------------------------------------------------

class _BudgetExhausted(Exception):
    pass


def minimize(
    objective: Callable[[np.ndarray], float],
    init: AnsatzParams,
    cfg: OptimizerConfig = OptimizerConfig(),
) -> OptResult:
    """Derivative-free minimisation of ``objective`` over the flat parameter vector.

    At most ``cfg.max_iterations`` objective evaluations are made; every one
    is recorded in the trace and the best point ever evaluated is returned.
    """
    trace: List[Tuple[int, float]] = []
    points: List[np.ndarray] = []
    best = [math.inf, init.to_vector()]

    def wrapped(x: np.ndarray) -> float:
        if len(trace) >= cfg.max_iterations:
            raise _BudgetExhausted
        value = float(objective(x))
        if not math.isfinite(value):
            raise NonFiniteObjectiveError(x, value)
        trace.append((len(trace), value))
        points.append(np.array(x, dtype=float))
        if value < best[0]:
            best[0], best[1] = value, np.array(x, dtype=float)
        return value

    terminated = Termination.TOLERANCE
    restart = getattr(objective, "restart", None)
    incumbent = init.to_vector()
    try:
        # Restart from the round's best point while a round still improves on
        # its own starting value by more than the tolerance; sampled
        # objectives otherwise stall the trust region long before the
        # evaluation budget is spent.
        for round_no in itertools.count():
            first = len(trace)
            if first >= cfg.max_iterations:
                break
            if round_no and restart is not None:
                restart()
            _local_search(wrapped, incumbent, cfg, cfg.max_iterations - first)
            values = [v for _, v in trace[first:]]
            incumbent = np.array(points[first + int(np.argmin(values))])
            if not values[0] - min(values) > cfg.function_tolerance:
                break
    except _BudgetExhausted:
        terminated = Termination.MAX_ITERATIONS
    if len(trace) >= cfg.max_iterations:
        terminated = Termination.MAX_ITERATIONS
    return OptResult(
        best_params=AnsatzParams.from_vector(best[1]),
        best_cost=best[0],
        cost_trace=trace,
        evaluations=len(trace),
        terminated_by=terminated,
    )


def _local_search(fun: Callable[[np.ndarray], float], x0: np.ndarray, cfg: OptimizerConfig, budget: int) -> None:
    if cfg.method == "cobyla":
        optimize.minimize(
            fun,
            x0,
            method="COBYLA",
            options={"maxiter": budget, "rhobeg": cfg.initial_step, "tol": cfg.function_tolerance},
        )
        return
    simplex = [x0] + [x0 + cfg.initial_step * e for e in np.eye(len(x0))]
    optimize.minimize(
        fun,
        x0,
        method="Nelder-Mead",
        options={
            "maxfev": budget,
            "maxiter": 10 * budget,
            "xatol": cfg.function_tolerance,
            "fatol": cfg.function_tolerance,
            "initial_simplex": np.array(simplex),
            "adaptive": len(x0) > 10,
        },
    )


class QaoaObjective:
    """CVaR of the QAOA state as a function of ``[gammas, betas]``.

    ``shots == 0`` evaluates on exact probabilities.  Otherwise each call
    samples from a Philox stream keyed by ``seed`` and the restart round.
    Under the ``fixed`` policy every call within a round reuses the same
    stream (common random numbers), so the objective is deterministic until
    :meth:`restart` is called; ``advance`` also keys the stream by the
    evaluation index.
    """

    def __init__(
        self,
        table: EnergyTable,
        layers: int,
        shots: int = 10_000,
        alpha: float = 0.3,
        seed: int = 0,
        seed_policy: str = "fixed",
        fractional: bool = True,
    ) -> None:
        if layers < 1:
            raise ValueError("need at least one layer")
        if shots < 0:
            raise ValueError("shots must be nonnegative")
        if seed_policy not in ("fixed", "advance"):
            raise ValueError(f"unknown seed policy {seed_policy!r}")
        CvarConfig(alpha)
        self.table = table
        self.layers = layers
        self.shots = shots
        self.alpha = alpha
        self.seed = seed
        self.seed_policy = seed_policy
        self.fractional = fractional
        self.evaluations = 0
        self.round = 0
        self._order = np.argsort(table.energies, kind="stable")
        self._sorted_energies = table.energies[self._order]
        n = table.qubit_count
        self._uniform = np.full(1 << n, (1 << n) ** -0.5, dtype=complex)

    def state(self, x: Sequence[float]) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (2 * self.layers,):
            raise ValueError(f"expected {2 * self.layers} parameters, got {x.shape}")
        amps = self._uniform.copy()
        n = self.table.qubit_count
        for gamma, beta in zip(x[: self.layers], x[self.layers:]):
            _phase_inplace(amps, self.table.energies, gamma)
            _mixer_inplace(amps, n, beta)
        return amps

    def masses(self, x: Sequence[float]) -> np.ndarray:
        probs = np.abs(self.state(x)) ** 2
        if self.shots == 0:
            return probs / probs.sum()
        if self.seed_policy == "fixed":
            stream = (0, self.round)
        else:
            stream = (0, self.round, self.evaluations)
        return sample_counts(probs, self.shots, make_rng(self.seed, *stream)) / self.shots

    def restart(self) -> None:
        """Switch to a fresh sampling stream (called between optimiser restarts)."""
        self.round += 1

    def __call__(self, x: Sequence[float]) -> float:
        masses = self.masses(x)[self._order]
        self.evaluations += 1
        return _cvar_sorted(masses, self._sorted_energies, self.alpha, self.fractional)


def qaoa_objective(
    table: EnergyTable,
    layers: int,
    shots: int = 10_000,
    alpha: float = 0.3,
    seed: int = 0,
    seed_policy: str = "fixed",
) -> QaoaObjective:
    return QaoaObjective(table, layers, shots, alpha, seed, seed_policy)
