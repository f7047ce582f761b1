from fractions import Fraction
from math import factorial, prod

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from networkx.algorithms.isomorphism import GraphMatcher
from scipy.optimize import linprog

from exactsub.decomposition import (
    OddCycle,
    Star,
    count_configurations,
    count_copies_upper_bound,
    decompose,
    fractional_edge_cover_number,
    pair_index,
    plan_for,
)
from exactsub.generators import complete_graph, erdos_renyi
from exactsub.graph import HostGraph
from exactsub.pattern import Pattern, PatternError, parse_pattern

from .conftest import connected_patterns, patterns

SPIDER = Pattern(6, ((0, 1), (0, 2), (1, 3), (3, 4), (3, 5)), "spider")


def lp_cover(h: Pattern) -> float:
    a = np.zeros((h.n, len(h.edges)))
    for j, (u, v) in enumerate(h.edges):
        a[u, j] = a[v, j] = 1
    res = linprog(np.ones(len(h.edges)), A_ub=-a, b_ub=-np.ones(h.n), bounds=(0, 1), method="highs")
    assert res.status == 0
    return res.fun


def automorphisms(h: Pattern) -> int:
    g = nx.Graph(list(h.edges))
    return sum(1 for _ in GraphMatcher(g, g).isomorphisms_iter())


@pytest.mark.parametrize(
    "spec, rho",
    [("K3", Fraction(3, 2)), ("K4", 2), ("C5", Fraction(5, 2)), ("S4", 4), ("S1", 1), ("P4", 2), ("K5", Fraction(5, 2))],
)
def test_known_cover_numbers(spec, rho):
    assert fractional_edge_cover_number(parse_pattern(spec)) == rho


def test_cover_number_matches_linear_program():
    for h in connected_patterns(6):
        assert abs(float(fractional_edge_cover_number(h)) - lp_cover(h)) < 1e-9


def test_cover_number_on_quarter_grid_is_no_better():
    # optimum over weights in multiples of 1/4, by brute force on small patterns
    from itertools import product

    for h in connected_patterns(4):
        best = None
        for w in product(range(5), repeat=len(h.edges)):
            if all(sum(w[j] for j, e in enumerate(h.edges) if v in e) >= 4 for v in range(h.n)):
                total = Fraction(sum(w), 4)
                best = total if best is None else min(best, total)
        assert best == fractional_edge_cover_number(h)


@given(patterns(max_n=6))
def test_decomposition_is_a_valid_partition(h):
    t = decompose(h)
    covered = []
    for piece in t.pieces:
        if isinstance(piece, OddCycle):
            seq = piece.vertices
            assert len(seq) % 2 == 1 and len(seq) >= 3
            assert all(h.has_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))
            covered.extend(seq)
        else:
            assert all(h.has_edge(piece.root, x) for x in piece.leaves)
            covered.extend((piece.root,) + piece.leaves)
    assert sorted(covered) == list(range(h.n))
    assert t.rho_total == fractional_edge_cover_number(h)
    kinds = [isinstance(p, Star) for p in t.pieces]
    assert kinds == sorted(kinds)  # cycles before stars


@pytest.mark.parametrize(
    "spec, shape",
    [("K3", "[C_3]"), ("K4", "[S_1, S_1]"), ("C5", "[C_5]"), ("S3", "[S_3]"), ("K5", "[C_3, S_1]"), ("2K3", "[C_3, C_3]"), ("K6", "[C_3, C_3]")],
)
def test_decomposition_types(spec, shape):
    assert decompose(parse_pattern(spec)).describe() == shape


# Hand derivations of f:
#   K3, C5, S_k: one piece covering everything, one canonical instance   -> 1
#   S1: a single edge with either endpoint as root                        -> 2
#   K4 as [S1, S1]: 3 perfect matchings * 2 orders * 2 * 2 roots          -> 24
#   P4 as [S1, S1]: the one perfect matching * 2 orders * 4 roots         -> 8
#   2K3 as [C3, C3]: the two triangles in either order                     -> 2
#   K6 as [C3, C3]: C(6,3) ordered splits into two triangles              -> 20
#   K5 as [C3, S1]: C(5,3) triangles * 2 roots for the remaining edge      -> 20
HAND_F = {"K3": 1, "C5": 1, "S3": 1, "S1": 2, "K4": 24, "P4": 8, "2K3": 2, "K6": 20, "K5": 20}


@pytest.mark.parametrize("spec, f", sorted(HAND_F.items()))
def test_configuration_counts(spec, f):
    h = parse_pattern(spec)
    assert count_configurations(h, decompose(h)) == f
    assert plan_for(h).f == f


@given(patterns(max_n=6))
def test_candidate_count_matches_orbit_formula(h):
    # slot fillings that form a configuration: f * (labelings per configuration);
    # two fillings give the same edge template iff they differ by an automorphism
    plan = plan_for(h)
    labelings = prod(2 * L for L in plan.cycle_lengths) * prod(factorial(k) for k in plan.star_petals)
    assert plan.f * labelings % automorphisms(h) == 0
    assert plan.max_candidates == plan.f * labelings // automorphisms(h)
    assert plan.accept_denominator == max(plan.f, plan.max_candidates)


def test_spider_needs_larger_coin_denominator():
    plan = plan_for(SPIDER)
    assert plan.decomposition.describe() == "[S_1, S_3]"
    assert (plan.f, plan.max_candidates, plan.accept_denominator) == (2, 6, 6)
    assert plan.success_scale == Fraction(1, 3)


def test_corpus_patterns_have_exact_coin():
    for spec in ("K3", "K4", "C5", "S3", "P4", "2K3", "K5", "K6", "S2", "C7"):
        plan = plan_for(parse_pattern(spec))
        assert plan.accept_denominator == plan.f, spec


def test_candidate_masks_match_edges():
    for spec in ("K4", "P4", "C5"):
        plan = plan_for(parse_pattern(spec))
        for mask, edges in plan.candidates:
            assert mask == sum(1 << pair_index(p, q, plan.size) for p, q in edges)
            assert len(edges) == len(plan.pattern.edges)


def test_pair_index_is_a_bijection():
    for size in range(2, 9):
        idx = [pair_index(p, q, size) for p in range(size) for q in range(p + 1, size)]
        assert idx == list(range(size * (size - 1) // 2))


def test_upper_bound():
    assert count_copies_upper_bound(complete_graph(6), parse_pattern("K3")) == 59  # ceil(15^1.5)
    assert count_copies_upper_bound(complete_graph(4), parse_pattern("K4")) == 36
    assert count_copies_upper_bound(HostGraph(3, []), parse_pattern("K3")) == 0


def test_upper_bound_dominates_counts():
    from exactsub.verify import enumerate_copies

    g = erdos_renyi(10, 0.5, seed=5)
    for h in connected_patterns(4):
        assert enumerate_copies(g, h).count <= count_copies_upper_bound(g, h)


def test_pattern_parsing():
    assert parse_pattern("2K3").n == 6
    assert parse_pattern("K3+S2").n == 6
    assert parse_pattern("P4").edges == ((0, 1), (1, 2), (2, 3))
    for bad in ("X3", "K", "K3++", ""):
        with pytest.raises(PatternError):
            parse_pattern(bad)
    with pytest.raises(PatternError):
        Pattern(3, ((0, 1),))


def test_pattern_from_file(tmp_path):
    path = tmp_path / "bowtie.edges"
    path.write_text("0 1\n1 2\n0 2\n2 3\n3 4\n2 4\n")
    h = parse_pattern(f"@{path}")
    assert h.n == 5 and len(h.edges) == 6
    assert decompose(h).rho_total == Fraction(5, 2)
