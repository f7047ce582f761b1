"""Small target patterns H and the CLI pattern mini-language."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path

from .graph import load_graph

MAX_PATTERN_VERTICES = 10


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class Pattern:
    """A simple graph on vertices ``0..n-1`` with no isolated vertices."""

    n: int
    edges: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        norm = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        if len(set(norm)) != len(norm):
            raise PatternError("pattern has duplicate edges")
        for u, v in norm:
            if u == v:
                raise PatternError("pattern has a self-loop")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise PatternError(f"pattern edge ({u}, {v}) outside 0..{self.n - 1}")
        if self.n > MAX_PATTERN_VERTICES:
            raise PatternError(f"pattern has {self.n} vertices, cap is {MAX_PATTERN_VERTICES}")
        touched = {x for e in norm for x in e}
        if len(touched) != self.n:
            raise PatternError("pattern has an isolated vertex; it cannot be edge-covered")
        object.__setattr__(self, "edges", norm)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def __str__(self) -> str:
        return self.name or f"H(n={self.n}, m={len(self.edges)})"


def clique(k: int) -> Pattern:
    return Pattern(k, tuple(combinations(range(k), 2)), f"K{k}")


def cycle(k: int) -> Pattern:
    if k < 3:
        raise PatternError("cycle patterns need length >= 3")
    return Pattern(k, tuple((i, (i + 1) % k) for i in range(k)), f"C{k}")


def star(k: int) -> Pattern:
    return Pattern(k + 1, tuple((0, i) for i in range(1, k + 1)), f"S{k}")


def path(k: int) -> Pattern:
    """P_k: path on k vertices."""
    if k < 2:
        raise PatternError("path patterns need at least 2 vertices")
    return Pattern(k, tuple((i, i + 1) for i in range(k - 1)), f"P{k}")


def disjoint(*parts: Pattern, name: str = "") -> Pattern:
    edges = []
    offset = 0
    for p in parts:
        edges.extend((u + offset, v + offset) for u, v in p.edges)
        offset += p.n
    return Pattern(offset, tuple(edges), name or "+".join(str(p) for p in parts))


_TERM = re.compile(r"^(\d*)([KCSP])(\d+)$")
_BUILDERS = {"K": clique, "C": cycle, "S": star, "P": path}


def parse_pattern(spec: str) -> Pattern:
    """``K3``, ``C5``, ``S3``, ``P4``, ``2K3`` (disjoint copies), ``K3+S2``, ``@file.edges``."""
    spec = spec.strip()
    if spec.startswith("@"):
        g = load_graph(Path(spec[1:]).read_text(encoding="utf-8"))
        return Pattern(g.n, g.edges, Path(spec[1:]).stem)
    parts: list[Pattern] = []
    for term in spec.split("+"):
        match = _TERM.match(term.strip())
        if not match:
            raise PatternError(f"cannot parse pattern term {term!r}")
        copies = int(match.group(1) or 1)
        parts.extend([_BUILDERS[match.group(2)](int(match.group(3)))] * copies)
    if len(parts) == 1:
        return parts[0]
    return disjoint(*parts, name=spec)
