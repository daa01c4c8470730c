"""QAOA for the independent domination problem on a dense statevector simulator."""

from .graph import Graph, closed_neighborhood, is_independent_dominating_set, parse_graph, read_graph
from .harness import RunConfig, RunReport, decode_bitstring, run_solve, run_sweep
from .ising import EnergyTable, IsingHamiltonian, energy, energy_table, qubo_to_ising
from .oracle import IdsCatalog, ScoreReport, brute_force_ids, brute_force_qubo_min, score_distribution
from .qubo import QuboModel, build_qubo, constraint_penalty, evaluate_qubo, slack_encoding
from .simulator import (
    AnsatzParams,
    SampleDistribution,
    Statevector,
    apply_mixer_layer,
    apply_phase_layer,
    evolve,
    expectation,
    sample,
    uniform_state,
)
from .variational import OptimizerConfig, OptResult, cvar, initial_params, minimize, qaoa_objective

__version__ = "0.1.0"
