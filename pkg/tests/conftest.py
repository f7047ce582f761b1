from __future__ import annotations

from functools import lru_cache

import networkx as nx
from hypothesis import settings, strategies as st

from exactsub.graph import HostGraph
from exactsub.pattern import Pattern

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@lru_cache(maxsize=None)
def connected_patterns(max_vertices: int) -> tuple[Pattern, ...]:
    """Every connected graph on 2..max_vertices vertices, one per isomorphism class."""
    out = []
    for g in nx.graph_atlas_g():
        if 2 <= g.number_of_nodes() <= max_vertices and nx.is_connected(g):
            out.append(Pattern(g.number_of_nodes(), tuple(g.edges())))
    return tuple(out)


@st.composite
def host_graphs(draw, min_n: int = 1, max_n: int = 8, max_edges: int | None = None) -> HostGraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_edges)) if pairs else []
    return HostGraph(n, chosen)


@st.composite
def patterns(draw, max_n: int = 5) -> Pattern:
    return draw(st.sampled_from(connected_patterns(max_n)))
