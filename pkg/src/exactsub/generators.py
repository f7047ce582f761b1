"""Deterministic corpus graphs: cliques, cycles, stars, paths, G(n, p), lollipops."""

from __future__ import annotations

import re
from itertools import combinations

from .graph import HostGraph
from .rng import STREAM_GENERATE, RandomSource


def complete_graph(n: int) -> HostGraph:
    return HostGraph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> HostGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return HostGraph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(petals: int) -> HostGraph:
    """S_k: center 0 joined to leaves 1..k."""
    return HostGraph(petals + 1, [(0, i) for i in range(1, petals + 1)])


def path_graph(n: int) -> HostGraph:
    return HostGraph(n, [(i, i + 1) for i in range(n - 1)])


def erdos_renyi(n: int, p: float, seed: int) -> HostGraph:
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = RandomSource(seed, STREAM_GENERATE)
    return HostGraph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.uniform() < p])


def lollipop_graph(clique: int, tail: int) -> HostGraph:
    """K_clique with a path of ``tail`` extra vertices hanging off vertex clique-1."""
    edges = list(combinations(range(clique), 2))
    prev = clique - 1
    for i in range(clique, clique + tail):
        edges.append((prev, i))
        prev = i
    return HostGraph(clique + tail, edges)


def disjoint_union(*graphs: HostGraph) -> HostGraph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return HostGraph(offset, edges)


_NAMED = re.compile(r"^([KCSP])(\d+)$")


def graph_from_spec(
    spec: str,
    n: int | None = None,
    p: float | None = None,
    seed: int = 0,
    tail: int | None = None,
) -> HostGraph:
    """Build a generator graph from ``K6``, ``C5``, ``S4``, ``P3``, ``er`` or ``lollipop``."""
    match = _NAMED.match(spec)
    if match:
        kind, size = match.group(1), int(match.group(2))
        return {"K": complete_graph, "C": cycle_graph, "S": star_graph, "P": path_graph}[kind](size)
    if spec == "er":
        if n is None or p is None:
            raise ValueError("er needs --n and --p")
        return erdos_renyi(n, p, seed)
    if spec == "lollipop":
        if n is None or tail is None:
            raise ValueError("lollipop needs --n (clique size) and --tail")
        return lollipop_graph(n, tail)
    raise ValueError(f"unknown graph spec {spec!r}")
