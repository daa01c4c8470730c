"""Exhaustive ground truth and scoring of measured distributions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .graph import Graph, VertexSet, closed_neighborhood
from .ising import bit_columns, bitstring
from .qubo import QuboModel
from .simulator import SampleDistribution

MAX_ENUMERATION = 24


class EnumerationBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class IdsCatalog:
    minimum_size: int
    optimal_sets: Tuple[VertexSet, ...]
    all_ids: Tuple[VertexSet, ...]

    def vertex_strings(self, n: int, optimal_only: bool = False) -> List[str]:
        sets = self.optimal_sets if optimal_only else self.all_ids
        return sorted(encode_vertex_set(s, n) for s in sets)

    def summary(self) -> dict:
        return {
            "minimum_size": self.minimum_size,
            "optimal_sets": [sorted(s) for s in self.optimal_sets],
            "ids_count": len(self.all_ids),
        }


@dataclass(frozen=True)
class ScoreReport:
    correct_probability: float
    optimal_probability: float
    top_strings: Tuple[Tuple[str, float], ...]

    def rank_of(self, z: str) -> int | None:
        for rank, (s, _) in enumerate(self.top_strings):
            if s == z:
                return rank
        return None


def encode_vertex_set(members, n: int) -> str:
    return "".join("1" if i in members else "0" for i in range(n))


def _set_key(s: VertexSet) -> tuple:
    return (len(s), sorted(s))


def brute_force_ids(g: Graph) -> IdsCatalog:
    """Enumerate every vertex subset and keep the independent dominating ones."""
    n = g.vertex_count
    if n > MAX_ENUMERATION:
        raise EnumerationBudgetError(f"{n} vertices exceeds enumeration budget {MAX_ENUMERATION}")
    subsets = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for v in range(n):
        mask = sum(1 << u for u in closed_neighborhood(g, v))
        ok &= (subsets & mask) != 0
    for u, v in g.edges:
        both = (1 << u) | (1 << v)
        ok &= (subsets & both) != both
    found = [frozenset(i for i in range(n) if (s >> i) & 1) for s in np.flatnonzero(ok)]
    found.sort(key=_set_key)
    # every maximal independent set dominates, so ``found`` is never empty
    smallest = len(found[0])
    optimal = tuple(s for s in found if len(s) == smallest)
    return IdsCatalog(smallest, optimal, tuple(found))


def qubo_values(m: QuboModel) -> np.ndarray:
    """Objective of every assignment, index order ``x_0`` most significant."""
    n = m.variable_count
    if n > MAX_ENUMERATION:
        raise EnumerationBudgetError(f"{n} variables exceeds enumeration budget {MAX_ENUMERATION}")
    bits = bit_columns(n).astype(float)
    values = np.full(1 << n, m.constant)
    for i, c in m.linear.items():
        values += c * bits[i]
    for (i, j), c in m.quadratic.items():
        values += c * bits[i] * bits[j]
    return values


def brute_force_qubo_min(m: QuboModel, atol: float = 1e-9) -> Tuple[float, List[str]]:
    """Global minimum and every minimising assignment (as bit strings)."""
    values = qubo_values(m)
    best = float(values.min())
    hits = np.flatnonzero(values <= best + atol)
    return best, [bitstring(int(k), m.variable_count) for k in hits]


def marginalize(dist: SampleDistribution, vertex_count: int) -> Dict[str, float]:
    out: Dict[str, float] = {}
    for z, p in dist.weights.items():
        if len(z) < vertex_count:
            raise ValueError(f"bit string {z!r} shorter than vertex count {vertex_count}")
        key = z[:vertex_count]
        out[key] = out.get(key, 0.0) + p
    return out


def score_distribution(dist: SampleDistribution, g: Graph, catalog: IdsCatalog, top: int | None = None) -> ScoreReport:
    """Probability of decoding to any IDS and to a minimum IDS.

    Slack positions are marginalised out; only the first ``|V|`` bits count.
    """
    n = g.vertex_count
    marginal = marginalize(dist, n)
    correct_strings = set(catalog.vertex_strings(n))
    optimal_strings = set(catalog.vertex_strings(n, optimal_only=True))
    correct = sum(p for z, p in marginal.items() if z in correct_strings)
    optimal = sum(p for z, p in marginal.items() if z in optimal_strings)
    ranked = sorted(marginal.items(), key=lambda kv: (-kv[1], kv[0]))
    if top is not None:
        ranked = ranked[:top]
    return ScoreReport(min(correct, 1.0), min(optimal, 1.0), tuple(ranked))
