from collections import Counter

import pytest
from hypothesis import given, strategies as st
from scipy import stats

from exactsub.generators import complete_graph, star_graph
from exactsub.graph import HostGraph
from exactsub.oracle import QueryError, QueryOracle, QueryStats
from exactsub.probability import HalfPowerProb
from exactsub.rng import RandomSource


def _draws(src, n, count):
    return [src.integer(n) for _ in range(count)]


def test_same_key_same_stream():
    assert _draws(RandomSource(7, 2, 5), 1000, 50) == _draws(RandomSource(7, 2, 5), 1000, 50)


@pytest.mark.parametrize("other", [(8, 2, 5), (7, 3, 5), (7, 2, 6)])
def test_distinct_keys_differ(other):
    assert _draws(RandomSource(7, 2, 5), 10**9, 8) != _draws(RandomSource(*other), 10**9, 8)


@given(st.integers(1, 50), st.integers(0, 2**63))
def test_integer_in_range(n, seed):
    src = RandomSource(seed)
    assert all(0 <= x < n for x in _draws(src, n, 20))


def test_integer_is_uniform():
    counts = Counter(_draws(RandomSource(1), 7, 70_000))
    assert stats.chisquare([counts[i] for i in range(7)]).pvalue > 0.001


def test_coin_frequency_and_extremes():
    src = RandomSource(3)
    p = HalfPowerProb(1, 1, 30)  # 30^-1/2
    hits = sum(src.coin(p) for _ in range(100_000))
    assert abs(hits / 100_000 - float(p)) < 4 * (float(p) * (1 - float(p)) / 100_000) ** 0.5
    assert all(src.coin(1.0) for _ in range(100))
    assert not any(src.coin(0.0) for _ in range(100))


def test_uniform_in_unit_interval():
    src = RandomSource(4)
    xs = [src.uniform() for _ in range(1000)]
    assert all(0.0 <= x < 1.0 for x in xs)


def test_each_query_costs_one():
    g = complete_graph(4)
    o = QueryOracle(g, RandomSource(0))
    o.degree(0)
    o.neighbor(0, 1)
    o.pair(0, 1)
    o.sample_directed_edge()
    o.sample_vertex_by_degree()
    assert o.stats == QueryStats(1, 1, 1, 2, 0)
    o.sample_vertex()
    assert o.stats.vertex_sample_queries == 1 and o.stats.total == 6


def test_neighbor_is_one_based():
    g = HostGraph(4, [(0, 3), (0, 1)])
    o = QueryOracle(g, RandomSource(0))
    assert [o.neighbor(0, i) for i in (1, 2)] == [1, 3]


@pytest.mark.parametrize(
    "call",
    [
        lambda o: o.degree(9),
        lambda o: o.neighbor(0, 0),
        lambda o: o.neighbor(0, 4),
        lambda o: o.pair(1, 1),
        lambda o: o.pair(-1, 2),
    ],
)
def test_faults_are_not_counted(call):
    o = QueryOracle(complete_graph(4), RandomSource(0))
    with pytest.raises(QueryError):
        call(o)
    assert o.stats.total == 0


def test_edge_sampling_needs_edges():
    o = QueryOracle(HostGraph(3, []), RandomSource(0))
    with pytest.raises(QueryError):
        o.sample_directed_edge()
    assert o.stats.total == 0


def test_directed_edges_are_uniform():
    g = star_graph(3)
    g = HostGraph(g.n, g.edges + ((1, 2),))
    o = QueryOracle(g, RandomSource(11))
    counts = Counter(o.sample_directed_edge() for _ in range(80_000))
    directed = [(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges]
    assert set(counts) == set(directed)
    assert stats.chisquare([counts[e] for e in directed]).pvalue > 0.001


def test_degree_proportional_vertex():
    g = star_graph(4)
    o = QueryOracle(g, RandomSource(12))
    counts = Counter(o.sample_vertex_by_degree() for _ in range(40_000))
    expected = [40_000 * g.degree(v) / (2 * g.m) for v in range(g.n)]
    assert stats.chisquare([counts[v] for v in range(g.n)], expected).pvalue > 0.001


def test_stats_arithmetic():
    a = QueryStats(1, 2, 3, 4, 0)
    b = QueryStats(1, 1, 1, 1, 0)
    assert (a + b).total == 14 and (a - b).as_dict()["total"] == 6
    c = a.copy()
    c.pair_queries += 1
    assert a.pair_queries == 3
