"""Per-call query usage and success rate of sample_subgraph against the predicted values.

    python3 scripts/query_budget.py [--trials N] [--seed S] [--threads T]
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from exactsub.decomposition import plan_for
from exactsub.generators import complete_graph, erdos_renyi, lollipop_graph
from exactsub.pattern import parse_pattern
from exactsub.runner import run_trials
from exactsub.verify import enumerate_copies, success_target


@dataclass
class Config:
    trials: int = 100_000
    seed: int = 12345
    threads: int = 1


CASES = [
    ("K6", complete_graph(6), "K3"),
    ("K6", complete_graph(6), "K4"),
    ("lollipop(6,4)", lollipop_graph(6, 4), "S2"),
    ("er(20,0.3,7)", erdos_renyi(20, 0.3, seed=7), "K3"),
    ("er(20,0.3,7)", erdos_renyi(20, 0.3, seed=7), "C5"),
    ("er(20,0.3,7)", erdos_renyi(20, 0.3, seed=7), "P4"),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=Config.trials)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--threads", type=int, default=Config.threads)
    cfg = Config(**vars(ap.parse_args()))

    print(f"{'graph':>14} {'H':>3} {'#H':>5} {'rate':>9} {'predicted':>9} {'z':>6} {'mean q':>7} {'max q':>6} {'bound':>6}")
    for name, g, spec in CASES:
        h = parse_pattern(spec)
        plan = plan_for(h)
        n_copies = enumerate_copies(g, h).count
        batch = run_trials(g, plan, cfg.trials, seed=cfg.seed, threads=cfg.threads)
        rate = batch.successes / cfg.trials
        target = success_target(n_copies, plan, 2 * g.m)
        sigma = (target * (1 - target) / cfg.trials) ** 0.5 or 1.0
        print(
            f"{name:>14} {spec:>3} {n_copies:>5} {rate:>9.5f} {target:>9.5f} {(rate - target) / sigma:>6.2f}"
            f" {batch.stats.total / cfg.trials:>7.2f} {batch.max_call_queries:>6} {plan.query_bound:>6}"
        )
        assert batch.stats.vertex_sample_queries == 0


if __name__ == "__main__":
    main()
