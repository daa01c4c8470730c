"""Simple undirected graphs, edge-list parsing and IDS predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Tuple

Edge = Tuple[int, int]
VertexSet = FrozenSet[int]


class GraphError(ValueError):
    """Base class for malformed graph input."""


class HeaderError(GraphError):
    pass


class EdgeLineError(GraphError):
    pass


class EdgeCountError(GraphError):
    pass


class EndpointRangeError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


def _normalize(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0 .. vertex_count - 1``.

    Edges are stored as ``(u, v)`` with ``u < v``.
    """

    vertex_count: int
    edges: FrozenSet[Edge] = frozenset()
    _adjacency: Tuple[FrozenSet[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise GraphError(f"negative vertex count {self.vertex_count}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise SelfLoopError(f"self-loop on vertex {u}")
            for w in (u, v):
                if not 0 <= w < self.vertex_count:
                    raise EndpointRangeError(f"endpoint {w} outside [0, {self.vertex_count})")
            normalized.add(_normalize(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))
        adjacency = [set() for _ in range(self.vertex_count)]
        for u, v in normalized:
            adjacency[u].add(v)
            adjacency[v].add(u)
        object.__setattr__(self, "_adjacency", tuple(frozenset(a) for a in adjacency))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Edge]) -> "Graph":
        """Build a graph, rejecting duplicate edges (in either orientation)."""
        seen = set()
        for u, v in edges:
            key = _normalize(u, v)
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge {u} {v}")
            seen.add(key)
        return cls(vertex_count, frozenset(seen))

    def neighbors(self, v: int) -> FrozenSet[int]:
        _check_vertex(self, v)
        return self._adjacency[v]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def to_text(self) -> str:
        lines = [f"{self.vertex_count} {len(self.edges)}"]
        lines += [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.vertex_count:
        raise IndexError(f"vertex {v} outside [0, {g.vertex_count})")


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document: a ``n m`` header then ``m`` lines ``u v``.

    Blank lines are ignored; LF and CRLF endings are both accepted.
    """
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise HeaderError("empty document")
    header = lines[0].split()
    if len(header) != 2:
        raise HeaderError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise HeaderError(f"non-integer header {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise HeaderError(f"negative header value in {lines[0]!r}")
    body = lines[1:]
    if len(body) != m:
        raise EdgeCountError(f"header declares {m} edges, found {len(body)}")

    edges = []
    for lineno, line in enumerate(body, start=2):
        parts = line.split()
        if len(parts) != 2:
            raise EdgeLineError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeLineError(f"line {lineno}: non-integer endpoint in {line!r}") from None
        if u == v:
            raise SelfLoopError(f"line {lineno}: self-loop on vertex {u}")
        for w in (u, v):
            if not 0 <= w < n:
                raise EndpointRangeError(f"line {lineno}: endpoint {w} outside [0, {n})")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    """``N[v]``: ``v`` together with its neighbours."""
    return g.neighbors(v) | {v}


def is_independent_dominating_set(g: Graph, d: Iterable[int]) -> Tuple[bool, bool]:
    """Return ``(dominating, independent)`` for the vertex set ``d``."""
    members = frozenset(d)
    for v in members:
        _check_vertex(g, v)
    dominating = all(closed_neighborhood(g, v) & members for v in range(g.vertex_count))
    independent = not any(u in members and v in members for u, v in g.edges)
    return dominating, independent


def is_ids(g: Graph, d: Iterable[int]) -> bool:
    dominating, independent = is_independent_dominating_set(g, d)
    return dominating and independent


# Test fixtures used throughout the suite and the scripts.

def six_node_graph() -> Graph:
    """The 6-vertex benchmark instance with minimum IDS {0,3,4} and {1,2,5}."""
    return Graph.from_edges(6, [(0, 2), (1, 3), (2, 3), (2, 4), (3, 5)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
