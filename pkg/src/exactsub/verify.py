"""Ground truth for the samplers.

* :func:`enumerate_copies` - brute-force subgraph enumeration, no oracle.
* :func:`exact_distribution` - runs the real ``sample_subgraph`` code on
  every transcript of its random choices and sums exact path probabilities.
* :func:`uniformity_test`, :func:`success_rate_check` - statistical checks.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .decomposition import SamplingPlan, plan_for
from .graph import HostGraph
from .oracle import QueryOracle
from .pattern import Pattern
from .probability import HalfPowerProb
from .samplers import CandidateAssembly, Copy, Mutation, sample_subgraph


class SizeError(ValueError):
    """Input exceeds the caps of an exhaustive computation."""


@dataclass
class CopySet:
    copies: tuple[Copy, ...]

    @property
    def count(self) -> int:
        return len(self.copies)

    def vertex_sets(self) -> list[frozenset[int]]:
        return [frozenset(x for e in c for x in e) for c in self.copies]

    def index(self) -> dict[Copy, int]:
        return {c: i for i, c in enumerate(self.copies)}


def _pattern_order(h: Pattern) -> list[int]:
    order: list[int] = []
    seen: set[int] = set()
    for start in sorted(range(h.n), key=lambda v: (-h.degree(v), v)):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(h.adjacency[v], key=lambda x: (-h.degree(x), x)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def enumerate_copies(
    g: HostGraph,
    h: Pattern,
    *,
    max_pattern_vertices: int | None = 8,
    max_graph_vertices: int | None = 40,
) -> CopySet:
    """All subgraphs of G isomorphic to H, each once, as sorted edge lists."""
    if max_pattern_vertices is not None and h.n > max_pattern_vertices:
        raise SizeError(f"pattern has {h.n} vertices, cap is {max_pattern_vertices}")
    if max_graph_vertices is not None and g.n > max_graph_vertices:
        raise SizeError(f"graph has {g.n} vertices, cap is {max_graph_vertices}")
    order = _pattern_order(h)
    earlier = [[w for w in order[:i] if h.has_edge(order[i], w)] for i in range(len(order))]
    image = [-1] * h.n
    used: set[int] = set()
    found: set[Copy] = set()

    def extend(i: int) -> None:
        if i == len(order):
            found.add(tuple(sorted((min(image[a], image[b]), max(image[a], image[b])) for a, b in h.edges)))
            return
        x = order[i]
        back = earlier[i]
        pool = g.adjacency[image[back[0]]] if back else range(g.n)
        for y in pool:
            if y in used:
                continue
            if all(g.has_edge(y, image[w]) for w in back):
                image[x] = y
                used.add(y)
                extend(i + 1)
                used.discard(y)
        image[x] = -1

    extend(0)
    return CopySet(tuple(sorted(found)))


# --------------------------------------------------------------------------
# transcript replay


class TranscriptSource:
    """A stand-in for :class:`RandomSource` that follows a scripted path.

    Choices beyond the scripted prefix take option 0 and are recorded with
    their arity, so the caller can walk every path like an odometer. The
    probability of the path is kept exactly; a rejected coin whose
    probability is irrational marks the path as untracked.
    """

    __slots__ = ("prefix", "trace", "coeff", "half", "tracked")

    def __init__(self, prefix: Sequence[int]):
        self.prefix = prefix
        self.trace: list[tuple[int, int]] = []
        self.coeff = Fraction(1)
        self.half = 0
        self.tracked = True

    def _pick(self, arity: int) -> int:
        depth = len(self.trace)
        choice = self.prefix[depth] if depth < len(self.prefix) else 0
        self.trace.append((choice, arity))
        return choice

    def integer(self, n: int) -> int:
        if n <= 0:
            raise ValueError("integer(n) needs n >= 1")
        if n == 1:
            return 0
        choice = self._pick(n)
        self.coeff /= n
        return choice

    def coin(self, p: HalfPowerProb) -> bool:
        if p >= 1:
            return True
        if p.coeff == 0:
            return False
        if self._pick(2) == 0:
            self.coeff *= p.coeff
            self.half += p.half_exponent
            return True
        if p.half_exponent % 2 == 0:
            q = 1 - p.rescaled(0).coeff
            self.coeff *= q
        else:
            self.tracked = False
        return False

    def probability(self, two_m: int) -> HalfPowerProb | None:
        if not self.tracked:
            return None
        return HalfPowerProb(self.coeff, self.half, two_m)


@dataclass
class Transcript:
    outcome: object
    probability: HalfPowerProb | None  # None: passes through an irrational reject branch
    choices: tuple[int, ...]


def enumerate_transcripts(
    g: HostGraph, run: Callable[[QueryOracle], object], max_transcripts: int | None = None
) -> Iterator[Transcript]:
    """Run ``run(oracle)`` once per path through its random choices."""
    prefix: list[int] = []
    count = 0
    two_m = max(2 * g.m, 1)
    while True:
        src = TranscriptSource(prefix)
        outcome = run(QueryOracle(g, src))
        count += 1
        if max_transcripts is not None and count > max_transcripts:
            raise SizeError(f"more than {max_transcripts} transcripts")
        yield Transcript(outcome, src.probability(two_m), tuple(c for c, _ in src.trace))
        trace = src.trace
        i = len(trace) - 1
        while i >= 0 and trace[i][0] + 1 >= trace[i][1]:
            i -= 1
        if i < 0:
            return
        prefix = [c for c, _ in trace[:i]] + [trace[i][0] + 1]


@dataclass
class ExactDistribution:
    two_m: int
    rho: Fraction
    target: HalfPowerProb | None
    probabilities: dict[Copy, HalfPowerProb] = field(default_factory=dict)
    configuration_classes: dict[Copy, set] = field(default_factory=dict)
    transcripts: int = 0

    def is_exact(self) -> bool:
        return all(p == self.target for p in self.probabilities.values())

    def total_success(self) -> HalfPowerProb | None:
        total = None
        for p in self.probabilities.values():
            total = p if total is None else total + p
        return total


def transcript_bound(g: HostGraph, plan: SamplingPlan) -> int:
    """(2m)^(edge draws), counting the wedge's possible draw per cycle."""
    draws = sum(L // 2 + 1 for L in plan.cycle_lengths) + sum(plan.star_petals)
    return (2 * g.m) ** draws


def exact_distribution(
    g: HostGraph,
    h: Pattern,
    *,
    plan: SamplingPlan | None = None,
    mutation: Mutation | None = None,
    max_two_m: int = 40,
    max_transcripts: int = 10**8,
) -> ExactDistribution:
    """Exact per-copy return probability of one ``sample_subgraph`` call."""
    if 2 * g.m > max_two_m:
        raise SizeError(f"2m = {2 * g.m} exceeds the cap {max_two_m}")
    plan = plan or plan_for(h)
    two_m = 2 * g.m
    if g.m == 0:
        return ExactDistribution(0, plan.rho, None)
    bound = transcript_bound(g, plan)
    if bound > max_transcripts:
        raise SizeError(f"transcript bound {bound} exceeds {max_transcripts}")
    target = HalfPowerProb(plan.success_scale, int(2 * plan.rho), two_m)
    out = ExactDistribution(two_m, plan.rho, target)

    def run(oracle: QueryOracle) -> CandidateAssembly:
        return sample_subgraph(oracle, plan, mutation=mutation)

    for tr in enumerate_transcripts(g, run):
        out.transcripts += 1
        outcome: CandidateAssembly = tr.outcome  # type: ignore[assignment]
        if outcome.copy is None:
            continue
        if tr.probability is None:
            raise AssertionError(f"success after an untracked rejection: choices {tr.choices}")
        copy = outcome.copy
        prev = out.probabilities.get(copy)
        out.probabilities[copy] = tr.probability if prev is None else prev + tr.probability
        out.configuration_classes.setdefault(copy, set()).add(outcome.key())
    return out


# --------------------------------------------------------------------------
# statistics


@dataclass
class UniformityReport:
    chi2: float
    df: int
    p_value: float
    tv_distance: float
    successes: int
    undersampled: bool

    def passed(self, alpha: float = 0.001) -> bool:
        return self.p_value >= alpha

    def as_dict(self) -> dict:
        return {
            "chi2": self.chi2,
            "df": self.df,
            "p_value": self.p_value,
            "tv_distance": self.tv_distance,
            "successes": self.successes,
            "undersampled": self.undersampled,
        }


def uniformity_test(per_copy_counts: Sequence[int], trials: int | None = None) -> UniformityReport:
    """Chi-square against the uniform multinomial over all copies (zeros included)."""
    from scipy import stats

    counts = [int(c) for c in per_copy_counts]
    k = len(counts)
    total = sum(counts) if trials is None else trials
    if total != sum(counts):
        raise ValueError("trials must equal the number of recorded successes")
    undersampled = k < 2 or total < 100 * k
    if k < 2 or total == 0:
        return UniformityReport(0.0, max(k - 1, 0), 1.0, 0.0, total, True)
    chi2, p = stats.chisquare(counts)
    tv = 0.5 * sum(abs(c / total - 1 / k) for c in counts)
    return UniformityReport(float(chi2), k - 1, float(p), tv, total, undersampled)


@dataclass
class SuccessRateReport:
    trials: int
    successes: int
    observed: float
    target: float
    sigma: float
    deviation: float  # in units of sigma
    band: float

    @property
    def passed(self) -> bool:
        if self.sigma == 0:
            return self.observed == self.target
        return abs(self.deviation) <= self.band

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "observed": self.observed,
            "target": self.target,
            "sigma": self.sigma,
            "deviation_sigmas": self.deviation,
            "band_sigmas": self.band,
            "passed": self.passed,
        }


def success_target(copies: int, plan: SamplingPlan, two_m: int) -> float:
    """#H * success_scale / (2m)^rho."""
    if two_m == 0:
        return 0.0
    return copies * float(plan.success_scale) / two_m ** float(plan.rho)


def success_rate_check(
    g: HostGraph,
    h: Pattern,
    trials: int,
    *,
    seed: int = 0,
    band: float = 4.0,
    threads: int = 1,
) -> SuccessRateReport:
    from .runner import run_trials

    if trials < 10_000:
        raise ValueError("success_rate_check needs at least 10^4 trials")
    plan = plan_for(h)
    copies = enumerate_copies(g, h).count
    target = success_target(copies, plan, 2 * g.m)
    batch = run_trials(g, plan, trials, seed=seed, threads=threads)
    observed = batch.successes / trials
    sigma = math.sqrt(target * (1 - target) / trials)
    deviation = (observed - target) / sigma if sigma else 0.0
    return SuccessRateReport(trials, batch.successes, observed, target, sigma, deviation, band)


def configuration_identity(dist: ExactDistribution, plan: SamplingPlan) -> bool:
    """Every returned copy is reached through exactly f distinct assemblies."""
    return all(len(classes) == plan.f for classes in dist.configuration_classes.values())


def distribution_by_copy(dist: ExactDistribution, copies: CopySet) -> dict[Copy, HalfPowerProb | None]:
    return {c: dist.probabilities.get(c) for c in copies.copies}


def missing_or_extra(dist: ExactDistribution, copies: CopySet) -> tuple[set, set]:
    support = set(dist.probabilities)
    truth = set(copies.copies)
    return truth - support, support - truth
