"""Batched trials with per-unit random streams and an optional process pool.

Units (blocks of raw trials, or single uniform-sampler runs) are keyed by
index, so results are identical for any worker count.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .decomposition import SamplingPlan
from .graph import HostGraph
from .oracle import QueryOracle, QueryStats
from .rng import STREAM_ESTIMATE, STREAM_SAMPLE, RandomSource
from .samplers import Copy, sample_copy, sample_subgraph, trial_budget

BLOCK = 4096


@dataclass
class TrialBatch:
    trials: int = 0
    successes: int = 0
    histogram: Counter = field(default_factory=Counter)
    stats: QueryStats = field(default_factory=QueryStats)
    max_call_queries: int = 0

    def merge(self, other: TrialBatch) -> TrialBatch:
        self.trials += other.trials
        self.successes += other.successes
        self.histogram.update(other.histogram)
        self.stats = self.stats + other.stats
        self.max_call_queries = max(self.max_call_queries, other.max_call_queries)
        return self


def _trial_block(args) -> TrialBatch:
    graph, plan, seed, stream, block, count = args
    oracle = QueryOracle(graph, RandomSource(seed, stream, block))
    stats = oracle.stats
    out = TrialBatch(trials=count)
    worst = 0
    for _ in range(count):
        before = stats.total
        copy = sample_subgraph(oracle, plan).copy
        used = stats.total - before
        if used > worst:
            worst = used
        if copy is not None:
            out.successes += 1
            out.histogram[copy] += 1
    out.stats = stats.copy()
    out.max_call_queries = worst
    return out


def _map(fn, jobs, threads: int):
    if threads <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, jobs))


def run_trials(
    graph: HostGraph,
    plan: SamplingPlan,
    trials: int,
    *,
    seed: int,
    stream: int = STREAM_ESTIMATE,
    threads: int = 1,
) -> TrialBatch:
    """``trials`` independent sample_subgraph calls."""
    jobs = []
    for block, start in enumerate(range(0, trials, BLOCK)):
        jobs.append((graph, plan, seed, stream, block, min(BLOCK, trials - start)))
    total = TrialBatch()
    for part in _map(_trial_block, jobs, threads):
        total.merge(part)
    return total


@dataclass
class UniformRuns:
    runs: int = 0
    successes: int = 0
    histogram: Counter = field(default_factory=Counter)
    stats: QueryStats = field(default_factory=QueryStats)
    strategies: Counter = field(default_factory=Counter)
    max_run_queries: int = 0
    q: int = 0


def _run_block(args) -> UniformRuns:
    graph, plan, x_h, seed, stream, first, count, allow_full_scan = args
    out = UniformRuns(runs=count)
    for run in range(first, first + count):
        oracle = QueryOracle(graph, RandomSource(seed, stream, run))
        copy, strategy = sample_copy(oracle, plan, x_h, allow_full_scan=allow_full_scan)
        out.strategies[strategy] += 1
        out.stats = out.stats + oracle.stats
        out.max_run_queries = max(out.max_run_queries, oracle.stats.total)
        if copy is not None:
            out.successes += 1
            out.histogram[copy] += 1
    return out


def run_uniform(
    graph: HostGraph,
    plan: SamplingPlan,
    x_h: float,
    runs: int,
    *,
    seed: int,
    stream: int = STREAM_SAMPLE,
    threads: int = 1,
    allow_full_scan: bool = True,
) -> UniformRuns:
    """``runs`` independent executions of the uniform sampler, one stream each."""
    chunk = max(1, min(256, -(-runs // max(threads, 1))))
    jobs = [
        (graph, plan, x_h, seed, stream, first, min(chunk, runs - first), allow_full_scan)
        for first in range(0, runs, chunk)
    ]
    total = UniformRuns(q=trial_budget(plan, 2 * graph.m, x_h) if x_h > 0 else 0)
    for part in _map(_run_block, jobs, threads):
        total.runs += part.runs
        total.successes += part.successes
        total.histogram.update(part.histogram)
        total.stats = total.stats + part.stats
        total.strategies.update(part.strategies)
        total.max_run_queries = max(total.max_run_queries, part.max_run_queries)
    return total


def copy_key(copy: Copy) -> str:
    return ",".join(f"{u}-{v}" for u, v in copy)
