"""Immutable host graphs, the degree/id vertex order, and edge-list I/O."""

from __future__ import annotations

import math
import re
from pathlib import Path
from typing import Iterable

_HEADER = re.compile(r"^#\s*n\s*=\s*(\d+)\s*$")


class GraphFormatError(ValueError):
    """Raised when edge-list text cannot be turned into a simple graph."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HostGraph:
    """Simple undirected graph on vertices ``0..n-1``.

    Adjacency lists are sorted ascending, so the i-th neighbor of a vertex
    (1-based, as the query model counts) is fixed for the lifetime of the
    object.
    """

    __slots__ = ("n", "m", "edges", "adjacency", "_neighbor_sets")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen: set[tuple[int, int]] = set()
        ordered: list[tuple[int, int]] = []
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            ordered.append(key)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.m = len(ordered)
        self.edges: tuple[tuple[int, int], ...] = tuple(ordered)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._neighbor_sets = tuple(frozenset(a) for a in adj)

    def __repr__(self) -> str:
        return f"HostGraph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HostGraph):
            return NotImplemented
        return self.n == other.n and set(self.edges) == set(other.edges)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.edges)))

    def __reduce__(self):
        return (HostGraph, (self.n, self.edges))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self._neighbor_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def to_text(self) -> str:
        """Serialize as edge-list text that :func:`load_graph` reads back."""
        lines = [f"# n={self.n}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"


def load_graph(source: str) -> HostGraph:
    """Parse edge-list text: one ``u v`` pair per line, ``#`` comments.

    A first line of the form ``# n=<N>`` declares the vertex count so that
    trailing isolated vertices survive a round trip.
    """
    declared: int | None = None
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    max_id = -1
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _HEADER.match(line)
            if match and lineno == 1:
                declared = int(match.group(1))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two vertex ids, got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex id in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"negative vertex id in {line!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key}", lineno)
        seen.add(key)
        pairs.append(key)
        max_id = max(max_id, u, v)
    n = max_id + 1
    if declared is not None:
        if declared < n:
            raise GraphFormatError(f"header declares n={declared} but vertex {max_id} appears", 1)
        n = declared
    return HostGraph(n, pairs)


def read_graph(path: str | Path) -> HostGraph:
    return load_graph(Path(path).read_text(encoding="utf-8"))


def order_key(g: HostGraph, v: int) -> tuple[int, int]:
    return (g.degree(v), v)


def precedes(u: int, v: int, g: HostGraph) -> bool:
    """Strict vertex order: lower degree first, ties broken by smaller id."""
    return order_key(g, u) < order_key(g, v)


def larger_neighbors(v: int, g: HostGraph) -> set[int]:
    key = order_key(g, v)
    return {w for w in g.adjacency[v] if order_key(g, w) > key}


def max_larger_neighbors(g: HostGraph) -> int:
    return max((len(larger_neighbors(v, g)) for v in range(g.n)), default=0)


def larger_neighbor_bound(g: HostGraph) -> float:
    return math.sqrt(2 * g.m)
