"""Metered query access to a host graph (augmented general graph model)."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

from .graph import HostGraph


class QueryError(RuntimeError):
    """An oracle call violated its precondition (bad id, index or empty graph)."""


@dataclass
class QueryStats:
    degree_queries: int = 0
    neighbor_queries: int = 0
    pair_queries: int = 0
    edge_sample_queries: int = 0
    vertex_sample_queries: int = 0

    @property
    def total(self) -> int:
        return (
            self.degree_queries
            + self.neighbor_queries
            + self.pair_queries
            + self.edge_sample_queries
            + self.vertex_sample_queries
        )

    def __add__(self, other: QueryStats) -> QueryStats:
        return QueryStats(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def __sub__(self, other: QueryStats) -> QueryStats:
        return QueryStats(*(getattr(self, f.name) - getattr(other, f.name) for f in fields(self)))

    def copy(self) -> QueryStats:
        return QueryStats(**asdict(self))

    def as_dict(self) -> dict[str, int]:
        out = asdict(self)
        out["total"] = self.total
        return out


class QueryOracle:
    """The only path from the samplers to the graph.

    ``m`` and ``n`` are known to the algorithm and free to read; everything
    else costs one query of the matching kind. ``rng`` supplies the
    randomness of edge-sample queries and of the samplers themselves; it
    only needs ``integer(k)`` and ``coin(p)``.
    """

    def __init__(self, graph: HostGraph, rng):
        self.graph = graph
        self.rng = rng
        self.stats = QueryStats()
        self.n = graph.n
        self.m = graph.m
        self.two_m = 2 * graph.m
        self._adj = graph.adjacency
        self._edges = graph.edges

    def _vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise QueryError(f"vertex {v} outside 0..{self.n - 1}")

    def degree(self, v: int) -> int:
        self._vertex(v)
        self.stats.degree_queries += 1
        return len(self._adj[v])

    def neighbor(self, v: int, i: int) -> int:
        """The i-th neighbor of v, 1-based."""
        self._vertex(v)
        if not 1 <= i <= len(self._adj[v]):
            raise QueryError(f"neighbor index {i} outside 1..{len(self._adj[v])} for vertex {v}")
        self.stats.neighbor_queries += 1
        return self._adj[v][i - 1]

    def pair(self, u: int, v: int) -> bool:
        self._vertex(u)
        self._vertex(v)
        if u == v:
            raise QueryError(f"pair query on identical vertices {u}")
        self.stats.pair_queries += 1
        return self.graph.has_edge(u, v)

    def _draw_edge(self) -> tuple[int, int]:
        if self.m == 0:
            raise QueryError("edge sampling on a graph without edges")
        u, v = self._edges[self.rng.integer(self.m)]
        self.stats.edge_sample_queries += 1
        # one uniform undirected edge plus a fair orientation bit
        if self.rng.integer(2):
            return v, u
        return u, v

    def sample_directed_edge(self) -> tuple[int, int]:
        """Each of the 2m directed edges with probability 1/(2m)."""
        return self._draw_edge()

    def sample_vertex_by_degree(self) -> int:
        """Vertex w with probability d_w / (2m): the head of one directed edge sample."""
        return self._draw_edge()[1]

    def sample_vertex(self) -> int:
        """Uniform vertex query. Part of the model; the samplers never call it."""
        if self.n == 0:
            raise QueryError("vertex sampling on an empty graph")
        self.stats.vertex_sample_queries += 1
        return self.rng.integer(self.n)
