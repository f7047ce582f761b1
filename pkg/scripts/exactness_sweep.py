"""Exact per-copy probabilities over a grid of small host graphs and patterns.

    python3 scripts/exactness_sweep.py [--max-transcripts N] [--out sweep.json]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from exactsub.decomposition import plan_for
from exactsub.generators import complete_graph, cycle_graph, disjoint_union, erdos_renyi, lollipop_graph, path_graph, star_graph
from exactsub.graph import HostGraph
from exactsub.pattern import parse_pattern
from exactsub.verify import SizeError, configuration_identity, enumerate_copies, exact_distribution, missing_or_extra

GRAPHS = {
    "K3": complete_graph(3),
    "K4": complete_graph(4),
    "K5": complete_graph(5),
    "K6": complete_graph(6),
    "C5": cycle_graph(5),
    "P4": path_graph(4),
    "S5": star_graph(5),
    "hub": HostGraph(10, star_graph(9).edges + ((1, 2),)),
    "lollipop(5,3)": lollipop_graph(5, 3),
    "2K3": disjoint_union(complete_graph(3), complete_graph(3)),
    "er(8,0.5,1)": erdos_renyi(8, 0.5, seed=1),
}
PATTERNS = ["S1", "S2", "K3", "P4", "C5", "K4", "S3", "2K3"]


@dataclass
class Row:
    graph: str
    pattern: str
    copies: int
    exact: bool | None
    configuration_identity: bool | None
    transcripts: int
    seconds: float
    note: str = ""


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-transcripts", type=int, default=2 * 10**6)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rows = []
    for gname, g in GRAPHS.items():
        for spec in PATTERNS:
            h = parse_pattern(spec)
            start = time.perf_counter()
            try:
                dist = exact_distribution(g, h, max_transcripts=args.max_transcripts)
            except SizeError as exc:
                rows.append(Row(gname, spec, -1, None, None, 0, 0.0, str(exc)))
                continue
            copies = enumerate_copies(g, h)
            missing, extra = missing_or_extra(dist, copies)
            exact = dist.is_exact() and not missing and not extra
            rows.append(
                Row(gname, spec, copies.count, exact, configuration_identity(dist, plan_for(h)),
                    dist.transcripts, round(time.perf_counter() - start, 3))
            )
            r = rows[-1]
            print(f"{gname:>14} {spec:>4}  copies={r.copies:<4} exact={r.exact}  identity={r.configuration_identity}  transcripts={r.transcripts}")
    bad = [r for r in rows if r.exact is False or r.configuration_identity is False]
    print(f"\n{len(rows)} pairs, {sum(r.exact is None for r in rows)} over the cap, {len(bad)} failures")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump([asdict(r) for r in rows], fh, indent=2)
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
