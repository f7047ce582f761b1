"""Wedge, odd-cycle, star and subgraph samplers over a :class:`QueryOracle`.

All randomness goes through ``oracle.rng`` (``integer`` and ``coin``), which
is what lets :mod:`exactsub.verify` replay every transcript symbolically.
A failed attempt returns ``None``.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .decomposition import SamplingPlan, pair_index
from .graph import HostGraph
from .oracle import QueryOracle, QueryStats
from .probability import HalfPowerProb

Copy = tuple[tuple[int, int], ...]  # sorted edge list of one instance of H in G


class Mutation(enum.Enum):
    """Deliberate sampler corruptions used to show the verifiers have teeth."""

    SKIP_COIN = "skip-coin"
    SKIP_ORDER = "skip-order"


@dataclass
class CandidateAssembly:
    cycles: tuple[tuple[int, ...], ...] = ()
    stars: tuple[tuple[int, ...], ...] = ()
    copy: Copy | None = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.copy is not None

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for part in self.cycles + self.stars for v in part)

    def key(self) -> tuple:
        return (self.cycles, self.stars)


@dataclass
class SampleReport:
    copy: Copy | None
    stats: QueryStats
    trial: int
    elapsed: float = field(default=0.0, compare=False)
    strategy: str = "sample-subgraph-uniformly"


def _low_degree(d: int, two_m: int) -> bool:
    # d <= sqrt(2m), decided on integers
    return d * d <= two_m


def _wedge(oracle: QueryOracle, u: int) -> tuple[int | None, bool]:
    """Apex draw plus whether it came from u's own adjacency list."""
    two_m = oracle.two_m
    d_u = oracle.degree(u)
    if d_u == 0:
        return None, True
    if _low_degree(d_u, two_m):
        j = oracle.rng.integer(d_u)
        if not oracle.rng.coin(HalfPowerProb(d_u, 1, two_m)):
            return None, True
        return oracle.neighbor(u, j + 1), True
    w = oracle.sample_vertex_by_degree()
    d_w = oracle.degree(w)
    if not _low_degree(d_w, two_m):
        # accept with probability sqrt(2m)/d_w = (2m/d_w) * (2m)^(-1/2)
        if not oracle.rng.coin(HalfPowerProb(Fraction(two_m, d_w), 1, two_m)):
            return None, False
    return w, False


def sample_wedge(oracle: QueryOracle, u: int, v: int) -> int | None:
    """Apex candidate w for a wedge at u, each eligible w w.p. 1/sqrt(2m).

    Low-degree u: each neighbor of u. High-degree u: every vertex w with
    d_w > sqrt(2m). The result is not checked for adjacency to v (or, in
    the high-degree branch, to u).
    """
    return _wedge(oracle, u)[0]


def sample_odd_cycle(
    oracle: QueryOracle, length: int, *, mutation: Mutation | None = None
) -> tuple[int, ...] | None:
    """A copy of C_length as its vertex sequence x0, x1, ..., x2k (x0 minimal).

    Every cycle instance of G comes back with probability (2m)^-(k+1/2).
    """
    if length < 3 or length % 2 == 0:
        raise ValueError("odd cycles need odd length >= 3")
    if oracle.m == 0:
        return None
    k = length // 2
    edges = [oracle.sample_directed_edge() for _ in range(k)]
    u1 = edges[0][0]
    vk = edges[-1][1]
    w, adjacent_to_u1 = _wedge(oracle, u1)
    if w is None:
        return None
    seq = [u1, w, vk]
    for i in range(k - 1, 0, -1):
        seq.append(edges[i][0])
        seq.append(edges[i - 1][1])
    if len(set(seq)) != length:
        return None
    if mutation is not Mutation.SKIP_ORDER:
        key = {x: (oracle.degree(x), x) for x in seq}
        base = key[u1]
        if not base < key[w] < key[edges[0][1]]:
            return None
        for a, b in edges[1:]:
            if not (base < key[a] and base < key[b]):
                return None
    for i in range(k - 1):
        if not oracle.pair(edges[i][1], edges[i + 1][0]):
            return None
    if not oracle.pair(vk, w):
        return None
    if not adjacent_to_u1 and not oracle.pair(w, u1):
        return None
    return tuple(seq)


def sample_star(
    oracle: QueryOracle, petals: int, *, mutation: Mutation | None = None
) -> tuple[int, ...] | None:
    """A rooted copy of S_petals as (root, leaf_1, ..., leaf_k) with ascending leaves.

    Each rooted star instance comes back with probability (2m)^-k.
    """
    if petals < 1:
        raise ValueError("stars need at least one petal")
    if oracle.m == 0:
        return None
    edges = [oracle.sample_directed_edge() for _ in range(petals)]
    root = edges[0][0]
    if any(t != root for t, _ in edges):
        return None
    heads = [h for _, h in edges]
    if mutation is Mutation.SKIP_ORDER:
        if len(set(heads)) != petals:
            return None
    elif petals > 1:
        keys = [(oracle.degree(h), h) for h in heads]
        if any(keys[i] >= keys[i + 1] for i in range(petals - 1)):
            return None
    return (root, *heads)


def sample_subgraph(
    oracle: QueryOracle, plan: SamplingPlan, *, mutation: Mutation | None = None
) -> CandidateAssembly:
    """One attempt at a copy of H; each copy succeeds w.p. success_scale * (2m)^-rho."""
    cycles = []
    for length in plan.cycle_lengths:
        c = sample_odd_cycle(oracle, length, mutation=mutation)
        if c is None:
            return CandidateAssembly(tuple(cycles), (), None, "cycle")
        cycles.append(c)
    stars = []
    for petals in plan.star_petals:
        s = sample_star(oracle, petals, mutation=mutation)
        if s is None:
            return CandidateAssembly(tuple(cycles), tuple(stars), None, "star")
        stars.append(s)
    cycles_t, stars_t = tuple(cycles), tuple(stars)
    positions = [v for part in cycles_t + stars_t for v in part]
    size = plan.size
    if len(set(positions)) != size:
        return CandidateAssembly(cycles_t, stars_t, None, "overlap")
    present = 0
    for p in range(size):
        for q in range(p + 1, size):
            if oracle.pair(positions[p], positions[q]):
                present |= 1 << pair_index(p, q, size)
    realized = [edges for mask, edges in plan.candidates if mask & present == mask]
    if not realized:
        return CandidateAssembly(cycles_t, stars_t, None, "not-a-copy")
    r = len(realized)
    rng = oracle.rng
    if mutation is not Mutation.SKIP_COIN:
        if not rng.coin(HalfPowerProb.rational(Fraction(r, plan.accept_denominator), max(oracle.two_m, 1))):
            return CandidateAssembly(cycles_t, stars_t, None, "coin")
    chosen = realized[rng.integer(r)]
    copy = tuple(
        sorted(
            (min(positions[p], positions[q]), max(positions[p], positions[q])) for p, q in chosen
        )
    )
    return CandidateAssembly(cycles_t, stars_t, copy, "")


def trial_budget(plan: SamplingPlan, two_m: int, x_h: float) -> int:
    """q = ceil(10 (2m)^rho / (success_scale * x_h)) invocations of sample_subgraph."""
    if x_h <= 0:
        raise ValueError("x_h must be positive")
    if two_m == 0:
        return 0
    scale = float(plan.success_scale)
    return math.ceil(10.0 * two_m ** float(plan.rho) / (scale * x_h))


def sample_subgraph_uniformly(
    oracle: QueryOracle, plan: SamplingPlan, x_h: float, *, mutation: Mutation | None = None
) -> Copy | None:
    """Repeat sample_subgraph up to q times; the first success is uniform over copies."""
    q = trial_budget(plan, oracle.two_m, x_h)
    for _ in range(q):
        attempt = sample_subgraph(oracle, plan, mutation=mutation)
        if attempt.copy is not None:
            return attempt.copy
    return None


def reconstruct_graph(oracle: QueryOracle) -> HostGraph:
    """Read all of G through degree and neighbor queries (n + 2m queries)."""
    edges = []
    for v in range(oracle.n):
        for i in range(1, oracle.degree(v) + 1):
            w = oracle.neighbor(v, i)
            if v < w:
                edges.append((v, w))
    return HostGraph(oracle.n, edges)


def full_scan_sample(oracle: QueryOracle, plan: SamplingPlan) -> Copy | None:
    """Query the whole graph, enumerate copies locally, return one uniformly."""
    from .verify import enumerate_copies

    local = reconstruct_graph(oracle)
    copies = enumerate_copies(local, plan.pattern, max_graph_vertices=None).copies
    if not copies:
        return None
    return copies[oracle.rng.integer(len(copies))]


def prefers_full_scan(m: int, plan: SamplingPlan, x_h: float) -> bool:
    """True when reading the whole graph is cheaper: m < m^rho / x_h."""
    if x_h <= 0:
        return True
    return m < m ** float(plan.rho) / (float(plan.success_scale) * x_h)


def sample_copy(
    oracle: QueryOracle, plan: SamplingPlan, x_h: float, *, allow_full_scan: bool = True
) -> tuple[Copy | None, str]:
    """Pick the cheaper strategy for the given estimate and run it once."""
    if allow_full_scan and prefers_full_scan(oracle.m, plan, x_h):
        return full_scan_sample(oracle, plan), "full-scan"
    if x_h <= 0:
        return None, "sample-subgraph-uniformly"
    return sample_subgraph_uniformly(oracle, plan, x_h), "sample-subgraph-uniformly"


@dataclass
class CountEstimate:
    estimate: float
    low: float
    high: float
    successes: int
    trials: int
    success_rate: float
    confidence: float

    def as_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "ci_low": self.low,
            "ci_high": self.high,
            "successes": self.successes,
            "trials": self.trials,
            "success_rate": self.success_rate,
            "confidence": self.confidence,
        }


def count_from_successes(
    successes: int, trials: int, plan: SamplingPlan, two_m: int, confidence: float = 0.95
) -> CountEstimate:
    """(successes / trials) * (2m)^rho / success_scale with a normal-approximation interval."""
    from statistics import NormalDist

    if trials < 1:
        raise ValueError("trials must be >= 1")
    rate = successes / trials
    scale = (two_m ** float(plan.rho) / float(plan.success_scale)) if two_m else 0.0
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    half = z * math.sqrt(rate * (1 - rate) / trials)
    return CountEstimate(
        estimate=rate * scale,
        low=max(0.0, rate - half) * scale,
        high=(rate + half) * scale,
        successes=successes,
        trials=trials,
        success_rate=rate,
        confidence=confidence,
    )


def estimate_count(
    oracle: QueryOracle, plan: SamplingPlan, trials: int, confidence: float = 0.95
) -> CountEstimate:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    successes = 0
    for _ in range(trials):
        if sample_subgraph(oracle, plan).copy is not None:
            successes += 1
    return count_from_successes(successes, trials, plan, oracle.two_m, confidence)


def run_uniform_sampler(
    graph: HostGraph,
    plan: SamplingPlan,
    x_h: float,
    rng,
    trial: int,
    *,
    allow_full_scan: bool = True,
) -> SampleReport:
    oracle = QueryOracle(graph, rng)
    start = time.perf_counter()
    copy, strategy = sample_copy(oracle, plan, x_h, allow_full_scan=allow_full_scan)
    return SampleReport(copy, oracle.stats, trial, time.perf_counter() - start, strategy)
