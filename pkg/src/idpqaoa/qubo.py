"""Penalty QUBO for the independent domination problem.

Objective (minimised)::

    sum_i x_i
      + sum_v  covering penalty of  sum_{j in N[v]} x_j >= 1
      + sum_{ij in E} P * x_i * x_j

The covering penalty depends on ``n = |N[v]|``:

* ``n == 1``: ``P * (x_v - 1)**2``
* ``n == 2``: ``P * (1 - x_a - x_b + x_a * x_b)``
* ``n >= 3``: ``P * (sum_j x_j - S - 1)**2`` where the slack ``S`` in
  ``[0, n - 1]`` is binary encoded with fresh variables.

Vertex variables occupy indices ``0 .. |V|-1``; slack variables follow,
grouped by owning vertex in ascending order, least significant weight first.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from .graph import Graph, closed_neighborhood

Pair = Tuple[int, int]


@dataclass(frozen=True)
class SlackEncoding:
    bit_count: int
    coefficients: Tuple[int, ...]
    range_max: int

    def attainable(self) -> List[int]:
        """Sorted distinct weighted sums over all slack-bit assignments."""
        sums = {0}
        for c in self.coefficients:
            sums |= {s + c for s in sums}
        return sorted(sums)


def slack_encoding(n: int) -> SlackEncoding:
    """Binary encoding of a slack ranging over ``[0, n - 1]``.

    Uses ``bl(n - 1)`` bits with weights ``1, 2, ..., 2**(bl - 2)`` and a
    final residual weight so the maximum sum is exactly ``n - 1``.
    """
    if n < 3:
        raise ValueError(f"slack encoding needs n >= 3, got {n}")
    top = n - 1
    bits = top.bit_length()
    powers = [1 << i for i in range(bits - 1)]
    residual = top - sum(powers)
    return SlackEncoding(bits, tuple(powers + [residual]), top)


class _Poly:
    """Accumulator for a quadratic pseudo-boolean polynomial (x**2 == x)."""

    def __init__(self) -> None:
        self.constant = 0.0
        self.linear: Dict[int, float] = defaultdict(float)
        self.quadratic: Dict[Pair, float] = defaultdict(float)

    def add_constant(self, c: float) -> None:
        self.constant += c

    def add_linear(self, i: int, c: float) -> None:
        self.linear[i] += c

    def add_product(self, i: int, j: int, c: float) -> None:
        if i == j:
            self.linear[i] += c
        else:
            self.quadratic[(min(i, j), max(i, j))] += c

    def add_squared(self, terms: Sequence[Tuple[int, float]], offset: float, scale: float) -> None:
        """Add ``scale * (sum_k c_k x_k + offset)**2`` with distinct variables."""
        self.constant += scale * offset * offset
        for k, (i, ci) in enumerate(terms):
            self.linear[i] += scale * (ci * ci + 2.0 * offset * ci)
            for j, cj in terms[k + 1:]:
                self.add_product(i, j, scale * 2.0 * ci * cj)

    def merge(self, other: "_Poly") -> None:
        self.constant += other.constant
        for i, c in other.linear.items():
            self.linear[i] += c
        for key, c in other.quadratic.items():
            self.quadratic[key] += c


@dataclass(frozen=True)
class PenaltyTerm:
    """Contribution of one covering constraint to the QUBO."""

    vertex: int
    constant: float
    linear: Mapping[int, float]
    quadratic: Mapping[Pair, float]
    slack: Tuple[Tuple[int, int], ...] = ()  # (variable, weight)

    def evaluate(self, values: Mapping[int, int]) -> float:
        total = self.constant
        total += sum(c * values[i] for i, c in self.linear.items())
        total += sum(c * values[i] * values[j] for (i, j), c in self.quadratic.items())
        return total


def constraint_penalty(g: Graph, v: int, penalty: float, first_slack: int | None = None) -> PenaltyTerm:
    """Quadratic penalty enforcing that ``N[v]`` meets the dominating set.

    Its minimum over the slack bits is 0 when the constraint holds and at
    least ``penalty`` otherwise.  New slack variables, if any, are numbered
    from ``first_slack`` (default: ``g.vertex_count``).
    """
    if penalty <= 0:
        raise ValueError("penalty must be positive")
    if first_slack is None:
        first_slack = g.vertex_count
    members = _neighborhood_order(g, v)
    poly = _Poly()
    slack: Tuple[Tuple[int, int], ...] = ()
    if len(members) == 1:
        poly.add_squared([(v, 1.0)], -1.0, penalty)
    elif len(members) == 2:
        a, b = members
        poly.add_constant(penalty)
        poly.add_linear(a, -penalty)
        poly.add_linear(b, -penalty)
        poly.add_product(a, b, penalty)
    else:
        enc = slack_encoding(len(members))
        slack = tuple((first_slack + k, w) for k, w in enumerate(enc.coefficients))
        terms = [(j, 1.0) for j in members] + [(s, -float(w)) for s, w in slack]
        poly.add_squared(terms, -1.0, penalty)
    return PenaltyTerm(v, poly.constant, dict(poly.linear), dict(poly.quadratic), slack)


def _neighborhood_order(g: Graph, v: int) -> List[int]:
    # vertex first, then neighbours ascending
    return [v] + sorted(closed_neighborhood(g, v) - {v})


@dataclass(frozen=True)
class QuboModel:
    variable_count: int
    vertex_count: int
    linear: Mapping[int, float]
    quadratic: Mapping[Pair, float]
    constant: float
    penalty: float
    slack_registry: Mapping[int, Tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.penalty <= 0:
            raise ValueError("penalty must be positive")
        for (i, j), c in self.quadratic.items():
            if not i < j:
                raise ValueError(f"quadratic key {(i, j)} must satisfy i < j")
            if not np.isfinite(c):
                raise ValueError(f"non-finite coefficient on {(i, j)}")

    def to_matrix(self) -> np.ndarray:
        """Upper-triangular ``Q`` with linear terms on the diagonal."""
        q = np.zeros((self.variable_count, self.variable_count))
        for i, c in self.linear.items():
            q[i, i] = c
        for (i, j), c in self.quadratic.items():
            q[i, j] = c
        return q

    def scaled(self, factor: float) -> "QuboModel":
        return QuboModel(
            self.variable_count,
            self.vertex_count,
            {i: factor * c for i, c in self.linear.items()},
            {k: factor * c for k, c in self.quadratic.items()},
            factor * self.constant,
            self.penalty,
            dict(self.slack_registry),
        )


def default_penalty(g: Graph) -> float:
    return 0.75 * g.vertex_count


def build_qubo(g: Graph, penalty: float | None = None, *, drop_zeros: bool = True) -> QuboModel:
    """Compile the IDS integer program on ``g`` into a penalty QUBO."""
    if g.vertex_count < 1:
        raise ValueError("graph has no vertices")
    if penalty is None:
        penalty = default_penalty(g)
    if penalty <= 0:
        raise ValueError("penalty must be positive")

    poly = _Poly()
    for i in range(g.vertex_count):
        poly.add_linear(i, 1.0)

    next_var = g.vertex_count
    registry: Dict[int, Tuple[int, int]] = {}
    for v in range(g.vertex_count):
        term = constraint_penalty(g, v, penalty, first_slack=next_var)
        poly.add_constant(term.constant)
        for i, c in term.linear.items():
            poly.add_linear(i, c)
        for (i, j), c in term.quadratic.items():
            poly.add_product(i, j, c)
        for var, weight in term.slack:
            registry[var] = (v, weight)
        next_var += len(term.slack)

    for u, w in g.sorted_edges():
        poly.add_product(u, w, penalty)

    linear = dict(sorted(poly.linear.items()))
    quadratic = dict(sorted(poly.quadratic.items()))
    if drop_zeros:
        linear = {k: c for k, c in linear.items() if c != 0.0}
        quadratic = {k: c for k, c in quadratic.items() if c != 0.0}
    return QuboModel(next_var, g.vertex_count, linear, quadratic, poly.constant, float(penalty), registry)


def evaluate_qubo(m: QuboModel, bits: Sequence[int]) -> float:
    if len(bits) != m.variable_count:
        raise ValueError(f"assignment has {len(bits)} bits, model has {m.variable_count}")
    total = m.constant
    for i, c in m.linear.items():
        if bits[i]:
            total += c
    for (i, j), c in m.quadratic.items():
        if bits[i] and bits[j]:
            total += c
    return total


def bits_from_string(z: str) -> List[int]:
    if any(ch not in "01" for ch in z):
        raise ValueError(f"not a bit string: {z!r}")
    return [int(ch) for ch in z]


def export_qubo(m: QuboModel) -> str:
    """Text export: constant, then ``i coeff`` lines, then ``i j coeff`` lines."""
    lines = [repr(float(m.constant))]
    lines += [f"{i} {c!r}" for i, c in sorted(m.linear.items())]
    lines += [f"{i} {j} {c!r}" for (i, j), c in sorted(m.quadratic.items())]
    return "\n".join(lines) + "\n"
