"""Fractional edge covers, odd-cycle/star decompositions and configurations.

Everything here is exhaustive search over a constant-size pattern; nothing
touches the host graph except :func:`count_copies_upper_bound`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Union

from .graph import HostGraph
from .pattern import Pattern, PatternError

MAX_COVER_EDGES = 15


@dataclass(frozen=True)
class OddCycle:
    vertices: tuple[int, ...]  # cyclic order, smallest vertex first

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def rho(self) -> Fraction:
        return Fraction(self.length, 2)

    def key(self) -> tuple:
        return (0, self.length, self.vertices)

    def __str__(self) -> str:
        return f"C_{self.length}"


@dataclass(frozen=True)
class Star:
    root: int
    leaves: tuple[int, ...]

    @property
    def petals(self) -> int:
        return len(self.leaves)

    @property
    def rho(self) -> Fraction:
        return Fraction(self.petals)

    def key(self) -> tuple:
        return (1, self.petals, (self.root,) + self.leaves)

    def __str__(self) -> str:
        return f"S_{self.petals}"


Piece = Union[OddCycle, Star]


@dataclass(frozen=True)
class DecompositionType:
    pieces: tuple[Piece, ...]  # cycles first, then stars

    @property
    def rho_total(self) -> Fraction:
        return sum((p.rho for p in self.pieces), Fraction(0))

    @property
    def cycles(self) -> tuple[OddCycle, ...]:
        return tuple(p for p in self.pieces if isinstance(p, OddCycle))

    @property
    def stars(self) -> tuple[Star, ...]:
        return tuple(p for p in self.pieces if isinstance(p, Star))

    def describe(self) -> str:
        return "[" + ", ".join(str(p) for p in self.pieces) + "]"

    def as_dict(self) -> dict:
        out = []
        for p in self.pieces:
            if isinstance(p, OddCycle):
                out.append({"kind": "odd_cycle", "length": p.length, "vertices": list(p.vertices)})
            else:
                out.append({"kind": "star", "petals": p.petals, "root": p.root, "leaves": list(p.leaves)})
        return {"pieces": out, "rho": str(self.rho_total), "type": self.describe()}


# --------------------------------------------------------------------------
# fractional edge cover number


def fractional_edge_cover_number(h: Pattern, max_edges: int = MAX_COVER_EDGES) -> Fraction:
    """Minimum total weight of a cover with weights in {0, 1/2, 1}.

    Half-integral weights suffice for the optimum, so this is exact.
    Weights are handled in halves: each vertex must collect 2.
    """
    edges = h.edges
    if len(edges) > max_edges:
        raise PatternError(f"pattern has {len(edges)} edges, cover search cap is {max_edges}")
    if any(h.degree(v) == 0 for v in range(h.n)):
        raise PatternError("isolated vertex: no edge cover exists")
    last = [-1] * h.n
    for i, (u, v) in enumerate(edges):
        last[u] = last[v] = i
    deficit = [2] * h.n
    best = [2 * len(edges) + 1]

    def search(i: int, total: int, need: int) -> None:
        # each half-unit on an edge lowers the summed deficit by at most 2
        if total + (need + 1) // 2 >= best[0]:
            return
        if i == len(edges):
            if need == 0:
                best[0] = total
            return
        u, v = edges[i]
        du, dv = deficit[u], deficit[v]
        for x in (2, 1, 0):
            nu, nv = max(0, du - x), max(0, dv - x)
            if (last[u] == i and nu) or (last[v] == i and nv):
                continue
            deficit[u], deficit[v] = nu, nv
            search(i + 1, total + x, need - (du - nu) - (dv - nv))
        deficit[u], deficit[v] = du, dv

    search(0, 0, 2 * h.n)
    return Fraction(best[0], 2)


# --------------------------------------------------------------------------
# decomposition into vertex-disjoint odd cycles and stars


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _first_hamiltonian_cycle(h: Pattern, verts: list[int]) -> tuple[int, ...] | None:
    """Lexicographically smallest Hamiltonian cycle sequence of H[verts], if any."""
    start = verts[0]
    allowed = set(verts)
    size = len(verts)
    dead: set[tuple[frozenset, int]] = set()
    seq = [start]

    def extend(visited: frozenset) -> bool:
        last = seq[-1]
        if len(seq) == size:
            return h.has_edge(last, start)
        if (visited, last) in dead:
            return False
        for w in sorted(h.adjacency[last]):
            if w in allowed and w not in visited:
                seq.append(w)
                if extend(visited | {w}):
                    return True
                seq.pop()
        dead.add((visited, last))
        return False

    return tuple(seq) if extend(frozenset([start])) else None


@lru_cache(maxsize=256)
def _pieces_by_mask(h: Pattern) -> dict[int, tuple[Fraction, Piece]]:
    """Cheapest piece spanning each vertex subset, smallest key among ties."""
    table: dict[int, tuple[Fraction, Piece]] = {}
    for mask in range(1, 1 << h.n):
        verts = _bits(mask)
        if len(verts) < 2:
            continue
        options: list[tuple[Fraction, tuple, Piece]] = []
        if len(verts) % 2 == 1 and len(verts) >= 3:
            seq = _first_hamiltonian_cycle(h, verts)
            if seq is not None:
                piece = OddCycle(seq)
                options.append((piece.rho, piece.key(), piece))
        for r in verts:
            others = [v for v in verts if v != r]
            if all(h.has_edge(r, v) for v in others):
                piece = Star(r, tuple(others))
                options.append((piece.rho, piece.key(), piece))
        if options:
            cost, _, piece = min(options, key=lambda o: (o[0], o[1]))
            table[mask] = (cost, piece)
    return table


def _submasks_with_low_bit(mask: int):
    low = mask & -mask
    rest = mask ^ low
    sub = rest
    while True:
        yield sub | low
        if sub == 0:
            return
        sub = (sub - 1) & rest


def _all_submasks(mask: int):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


@lru_cache(maxsize=256)
def decompose(h: Pattern) -> DecompositionType:
    """Minimum-rho partition of V_H into odd cycles and stars.

    Among optimal partitions the one whose sorted piece-key sequence is
    lexicographically smallest is returned, so cycles come first.
    """
    table = _pieces_by_mask(h)
    full = (1 << h.n) - 1
    best: dict[int, Fraction] = {0: Fraction(0)}
    for mask in range(1, full + 1):
        value = None
        for sub in _submasks_with_low_bit(mask):
            if sub in table:
                rest = best.get(mask ^ sub)
                if rest is not None:
                    cand = table[sub][0] + rest
                    if value is None or cand < value:
                        value = cand
        if value is not None:
            best[mask] = value
    if full not in best:
        raise AssertionError(f"no odd-cycle/star partition of {h}")
    pieces: list[Piece] = []
    remaining = full
    while remaining:
        choices = [
            table[sub][1]
            for sub in _all_submasks(remaining)
            if sub in table
            and (remaining ^ sub) in best
            and table[sub][0] + best[remaining ^ sub] == best[remaining]
        ]
        piece = min(choices, key=lambda p: p.key())
        pieces.append(piece)
        used = piece.vertices if isinstance(piece, OddCycle) else (piece.root,) + piece.leaves
        for v in used:
            remaining &= ~(1 << v)
    return DecompositionType(tuple(pieces))


def count_copies_upper_bound(g: HostGraph, h: Pattern) -> int:
    """Ceiling of m^rho(H), the main term of the AGM bound."""
    rho = fractional_edge_cover_number(h)
    twice = int(rho * 2)
    if g.m == 0:
        return 0
    value = g.m**twice  # m^rho = sqrt(m^(2 rho))
    root = math.isqrt(value)
    return root if root * root == value else root + 1


# --------------------------------------------------------------------------
# configurations


def _cycle_instances(h: Pattern, length: int) -> list[tuple[int, ...]]:
    """Every cycle of the given length once, as its canonical sequence."""
    found = []
    for verts in combinations(range(h.n), length):
        start, rest = verts[0], verts[1:]
        for perm in permutations(rest):
            if perm[0] > perm[-1]:
                continue
            seq = (start,) + perm
            if all(h.has_edge(seq[i], seq[(i + 1) % length]) for i in range(length)):
                found.append(seq)
    return found


def _star_instances(h: Pattern, petals: int) -> list[tuple[int, tuple[int, ...]]]:
    return [
        (r, leaves)
        for r in range(h.n)
        for leaves in combinations(sorted(h.adjacency[r]), petals)
    ]


def slot_layout(t: DecompositionType) -> list[tuple[str, int]]:
    """Per slot: kind and piece size (cycle length / star petals)."""
    return [("cycle", p.length) if isinstance(p, OddCycle) else ("star", p.petals) for p in t.pieces]


def configurations(h: Pattern, t: DecompositionType) -> list[tuple]:
    """All ordered tuples of piece instances of H that match ``t`` slot by slot.

    Cycle instances are unrooted (one canonical sequence each); star
    instances are rooted ``(root, leaves)`` pairs. The tuple must cover V_H
    with vertex-disjoint pieces.
    """
    pools = []
    for kind, size in slot_layout(t):
        if kind == "cycle":
            pools.append([("cycle", seq, frozenset(seq)) for seq in _cycle_instances(h, size)])
        else:
            pools.append(
                [("star", (r, leaves), frozenset((r,) + leaves)) for r, leaves in _star_instances(h, size)]
            )
    out: list[tuple] = []
    chosen: list = []

    def fill(slot: int, used: frozenset) -> None:
        if slot == len(pools):
            if len(used) == h.n:
                out.append(tuple(chosen))
            return
        for kind, inst, verts in pools[slot]:
            if used.isdisjoint(verts):
                chosen.append((kind, inst))
                fill(slot + 1, used | verts)
                chosen.pop()

    fill(0, frozenset())
    return out


def count_configurations(h: Pattern, t: DecompositionType) -> int:
    return len(configurations(h, t))


# --------------------------------------------------------------------------
# sampling plan shared by the samplers and the exact verifier


def pair_index(p: int, q: int, size: int) -> int:
    """Bit index of position pair p < q in row-major order."""
    return p * size - p * (p + 1) // 2 + (q - p - 1)


@dataclass(frozen=True)
class SamplingPlan:
    """Precomputed data for assembling and accepting copies of H.

    ``candidates`` lists, for the slot positions the samplers fill (each
    cycle's vertices in cycle order, then each star's root and leaves), the
    distinct ways H's edges can sit on those positions so that the sampled
    pieces form a configuration. An assembly realizing ``r`` of them accepts
    each with probability ``1/accept_denominator``.
    """

    pattern: Pattern
    decomposition: DecompositionType
    f: int
    cycle_lengths: tuple[int, ...]
    star_petals: tuple[int, ...]
    candidates: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]  # (mask, position edges)
    accept_denominator: int

    @property
    def rho(self) -> Fraction:
        return self.decomposition.rho_total

    @property
    def size(self) -> int:
        return self.pattern.n

    @property
    def max_candidates(self) -> int:
        return len(self.candidates)

    @property
    def success_scale(self) -> Fraction:
        """Per-copy success probability divided by (2m)^-rho; 1 when f covers every overlap."""
        return Fraction(self.f, self.accept_denominator)

    @property
    def query_bound(self) -> int:
        """Per-call budget for one sample_subgraph invocation."""
        k = self.pattern.n
        return 6 * sum(self.cycle_lengths) + len(self.decomposition.pieces) + k * k + 4 * k

    def as_dict(self) -> dict:
        return {
            "pattern": str(self.pattern),
            "decomposition": self.decomposition.as_dict(),
            "rho": str(self.rho),
            "f": self.f,
            "accept_denominator": self.accept_denominator,
            "overlap_candidates": self.max_candidates,
            "exact_per_copy": self.accept_denominator == self.f,
        }


def _slot_labelings(kind: str, inst) -> list[tuple[int, ...]]:
    if kind == "cycle":
        seq = inst
        L = len(seq)
        rots = [seq[i:] + seq[:i] for i in range(L)]
        return rots + [tuple(reversed(r)) for r in rots]
    root, leaves = inst
    return [(root,) + perm for perm in permutations(leaves)]


@lru_cache(maxsize=256)
def plan_for(h: Pattern) -> SamplingPlan:
    t = decompose(h)
    configs = configurations(h, t)
    f = len(configs)
    size = h.n
    masks: dict[int, tuple[tuple[int, int], ...]] = {}
    for config in configs:
        for labeling in product(*(_slot_labelings(kind, inst) for kind, inst in config)):
            pos = {}
            for v in (x for part in labeling for x in part):
                pos[v] = len(pos)
            pos_edges = tuple(sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in h.edges))
            mask = 0
            for p, q in pos_edges:
                mask |= 1 << pair_index(p, q, size)
            masks.setdefault(mask, pos_edges)
    candidates = tuple(sorted(masks.items()))
    return SamplingPlan(
        pattern=h,
        decomposition=t,
        f=f,
        cycle_lengths=tuple(c.length for c in t.cycles),
        star_petals=tuple(s.petals for s in t.stars),
        candidates=candidates,
        accept_denominator=max(f, len(candidates)),
    )
