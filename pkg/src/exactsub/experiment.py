"""Experiment configs and the JSON/CSV reports behind each CLI subcommand."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from dataclasses import dataclass
from pathlib import Path

from .decomposition import count_copies_upper_bound, fractional_edge_cover_number, plan_for
from .generators import graph_from_spec
from .graph import HostGraph, read_graph
from .pattern import Pattern, parse_pattern
from .rng import STREAM_ESTIMATE
from .runner import copy_key, run_trials, run_uniform
from .oracle import QueryStats
from .samplers import Mutation, count_from_successes
from .verify import (
    SizeError,
    configuration_identity,
    enumerate_copies,
    exact_distribution,
    missing_or_extra,
    uniformity_test,
)

DEFAULT_SEED = 12345
REPORT_VERSION = 1
SCHEMA_PATH = Path(__file__).with_name("report.schema.json")


def default_seed() -> int:
    env = os.environ.get("SAMPLER_SEED")
    return int(env) if env else DEFAULT_SEED


def resolve_graph(source: str) -> HostGraph:
    """A file path, or a generator spec such as ``K6`` or ``er:n=12,p=0.4,seed=3``."""
    if Path(source).is_file():
        return read_graph(source)
    name, _, params = source.partition(":")
    kw: dict = {}
    for item in filter(None, params.split(",")):
        key, _, value = item.partition("=")
        if key == "p":
            kw["p"] = float(value)
        elif key in ("n", "seed", "tail"):
            kw[key] = int(value)
        else:
            raise ValueError(f"unknown generator parameter {key!r}")
    return graph_from_spec(name, **kw)


@dataclass
class ExperimentConfig:
    graph: str
    pattern: str
    trials: int = 1000
    seed: int = DEFAULT_SEED
    xh: str = "exact"  # "exact" | "estimate" | a positive number
    fmt: str = "json"
    threads: int = 1
    verify: bool = True
    allow_full_scan: bool = True
    mutation: str | None = None
    timing: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.fmt not in ("json", "csv"):
            raise ValueError("format must be json or csv")
        if self.xh not in ("exact", "estimate"):
            try:
                value = float(self.xh)
            except ValueError:
                raise ValueError(f"--xh must be exact, estimate or a number, got {self.xh!r}") from None
            if not value > 0:
                raise ValueError("--xh value must be positive")


def _graph_block(g: HostGraph, source: str) -> dict:
    return {"source": source, "n": g.n, "m": g.m}


def _pattern_block(h: Pattern, spec: str) -> dict:
    return {"spec": spec, "n": h.n, "edges": [list(e) for e in h.edges]}


def _plan_block(h: Pattern) -> dict:
    plan = plan_for(h)
    return {
        "rho": str(plan.rho),
        "f": plan.f,
        "accept_denominator": plan.accept_denominator,
        "decomposition": plan.decomposition.as_dict(),
    }


def cmd_sample(config: ExperimentConfig) -> dict:
    """Run the uniform sampler ``config.trials`` times and summarize."""
    started = time.perf_counter()
    g = resolve_graph(config.graph)
    h = parse_pattern(config.pattern)
    plan = plan_for(h)
    copies = None
    try:
        copies = enumerate_copies(g, h)
    except SizeError:
        if config.xh == "exact":
            raise
    xh_block: dict = {"mode": config.xh if config.xh in ("exact", "estimate") else "value"}
    if config.xh == "exact":
        x_h = float(copies.count)
    elif config.xh == "estimate":
        warmup = max(1, config.trials // 10)
        batch = run_trials(g, plan, warmup, seed=config.seed, stream=STREAM_ESTIMATE, threads=config.threads)
        est = count_from_successes(batch.successes, warmup, plan, 2 * g.m)
        xh_block["warmup_trials"] = warmup
        xh_block["raw_estimate"] = est.estimate
        # a zero estimate gives no trial budget; fall back to the most conservative positive value
        x_h = est.estimate if est.estimate > 0 else 1.0
    else:
        x_h = float(config.xh)
    xh_block["value"] = x_h

    if g.m == 0 or x_h <= 0:
        runs = None
        successes = 0
        histogram: dict = {}
        stats = None
        strategies = {"none": config.trials}
        q = 0
        max_run = 0
    else:
        runs = run_uniform(
            g,
            plan,
            x_h,
            config.trials,
            seed=config.seed,
            threads=config.threads,
            allow_full_scan=config.allow_full_scan,
        )
        successes = runs.successes
        histogram = runs.histogram
        stats = runs.stats
        strategies = dict(runs.strategies)
        q = runs.q
        max_run = runs.max_run_queries

    rate = successes / config.trials
    sd = math.sqrt(max(rate * (1 - rate), 0.0) / config.trials)
    report: dict = {
        "command": "sample",
        "version": REPORT_VERSION,
        "seed": config.seed,
        "graph": _graph_block(g, config.graph),
        "pattern": _pattern_block(h, config.pattern),
        **_plan_block(h),
        "x_h": xh_block,
        "q": q,
        "strategies": dict(sorted(strategies.items())),
        "trials": config.trials,
        "successes": successes,
        "success_rate": rate,
        "success_rate_ci": [max(0.0, rate - 1.96 * sd), min(1.0, rate + 1.96 * sd)],
        "copies_total": copies.count if copies is not None else None,
        "agm_bound": count_copies_upper_bound(g, h),
        "histogram": [{"copy": copy_key(c), "count": n} for c, n in sorted(histogram.items())],
        "queries": (stats if stats is not None else QueryStats()).as_dict(),
        "max_queries_per_run": max_run,
        "query_budget_per_run": q * plan.query_bound,
    }

    checks: dict[str, bool] = {}
    uniformity = None
    if copies is not None and copies.count >= 2 and successes:
        counts = [histogram.get(c, 0) for c in copies.copies]
        uniformity = uniformity_test(counts)
        if config.verify and not uniformity.undersampled:
            checks["uniformity"] = uniformity.passed(0.001)
    report["uniformity"] = uniformity.as_dict() if uniformity else None
    if config.verify:
        exact_xh = copies is not None and copies.count >= 1 and copies.count <= x_h <= 2 * copies.count
        if exact_xh:
            slack = 3 * math.sqrt((2 / 3) * (1 / 3) / config.trials)
            checks["success_bound"] = rate >= 2 / 3 - slack
        only_alg5 = strategies.get("full-scan", 0) == 0
        if stats is not None and only_alg5:
            checks["query_budget"] = max_run <= q * plan.query_bound
        checks["no_vertex_sampling"] = (stats.vertex_sample_queries if stats else 0) == 0
        if copies is not None:
            checks["histogram_support"] = set(histogram) <= set(copies.copies)
    report["checks"] = checks
    report["passed"] = all(checks.values())
    if config.timing:
        report["elapsed_seconds"] = time.perf_counter() - started
    return report


def _at_exponent(p, half_exponent: int) -> dict:
    if (p.half_exponent - half_exponent) % 2 == 0:
        p = p.rescaled(half_exponent)
    return p.as_dict()


def cmd_verify_exact(config: ExperimentConfig) -> dict:
    g = resolve_graph(config.graph)
    h = parse_pattern(config.pattern)
    plan = plan_for(h)
    mutation = Mutation(config.mutation) if config.mutation else None
    dist = exact_distribution(g, h, plan=plan, mutation=mutation)
    copies = enumerate_copies(g, h)
    missing, extra = missing_or_extra(dist, copies)
    instances = []
    for c in copies.copies:
        p = dist.probabilities.get(c)
        ok = p is not None and p == dist.target
        instances.append(
            {
                "copy": copy_key(c),
                "probability": _at_exponent(p, int(2 * plan.rho)) if p is not None else None,
                "configurations": len(dist.configuration_classes.get(c, ())),
                "status": "PASS" if ok else "FAIL",
            }
        )
    identity = configuration_identity(dist, plan)
    passed = (
        not extra
        and not missing
        and all(i["status"] == "PASS" for i in instances)
        and (identity or mutation is not None)
    )
    return {
        "command": "verify-exact",
        "version": REPORT_VERSION,
        "graph": _graph_block(g, config.graph),
        "pattern": _pattern_block(h, config.pattern),
        **_plan_block(h),
        "two_m": 2 * g.m,
        "mutation": config.mutation,
        "target": dist.target.as_dict() if dist.target is not None else None,
        "copies_total": copies.count,
        "instances": instances,
        "missing": [copy_key(c) for c in sorted(missing)],
        "extra": [copy_key(c) for c in sorted(extra)],
        "configuration_identity": identity,
        "transcripts": dist.transcripts,
        "passed": passed,
    }


def cmd_decompose(spec: str) -> dict:
    h = parse_pattern(spec)
    plan = plan_for(h)
    return {
        "command": "decompose",
        "version": REPORT_VERSION,
        "pattern": _pattern_block(h, spec),
        **_plan_block(h),
        "rho_cover": str(fractional_edge_cover_number(h)),
        "exact_per_copy": plan.accept_denominator == plan.f,
        "query_bound_per_call": plan.query_bound,
        "passed": plan.rho == fractional_edge_cover_number(h),
    }


def cmd_estimate_count(config: ExperimentConfig) -> dict:
    g = resolve_graph(config.graph)
    h = parse_pattern(config.pattern)
    plan = plan_for(h)
    batch = run_trials(g, plan, config.trials, seed=config.seed, stream=STREAM_ESTIMATE, threads=config.threads)
    est = count_from_successes(batch.successes, config.trials, plan, 2 * g.m)
    try:
        exact = enumerate_copies(g, h).count
    except SizeError:
        exact = None
    return {
        "command": "estimate-count",
        "version": REPORT_VERSION,
        "seed": config.seed,
        "graph": _graph_block(g, config.graph),
        "pattern": _pattern_block(h, config.pattern),
        **_plan_block(h),
        **est.as_dict(),
        "exact_count": exact,
        "within_ci": (est.low <= exact <= est.high) if exact is not None else None,
        "queries": batch.stats.as_dict(),
        "max_queries_per_call": batch.max_call_queries,
        "query_bound_per_call": plan.query_bound,
        "passed": batch.max_call_queries <= plan.query_bound and batch.stats.vertex_sample_queries == 0,
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if report["command"] == "sample":
        writer.writerow(["copy", "count"])
        for row in report["histogram"]:
            writer.writerow([row["copy"], row["count"]])
    elif report["command"] == "verify-exact":
        writer.writerow(["copy", "status", "coeff", "half_exponent", "configurations"])
        for row in report["instances"]:
            p = row["probability"] or {}
            writer.writerow([row["copy"], row["status"], p.get("coeff"), p.get("half_exponent"), row["configurations"]])
    else:
        writer.writerow(["key", "value"])
        for key, value in sorted(report.items()):
            if not isinstance(value, (dict, list)):
                writer.writerow([key, value])
    return buf.getvalue()


def load_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
