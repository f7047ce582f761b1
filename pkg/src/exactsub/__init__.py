"""Exactly uniform sampling of small subgraphs through a metered query oracle."""

from .decomposition import (
    DecompositionType,
    OddCycle,
    SamplingPlan,
    Star,
    count_configurations,
    count_copies_upper_bound,
    decompose,
    fractional_edge_cover_number,
    plan_for,
)
from .graph import GraphFormatError, HostGraph, larger_neighbors, load_graph, precedes, read_graph
from .oracle import QueryError, QueryOracle, QueryStats
from .pattern import Pattern, PatternError, parse_pattern
from .probability import HalfPowerProb
from .rng import RandomSource
from .samplers import (
    Mutation,
    estimate_count,
    full_scan_sample,
    sample_odd_cycle,
    sample_star,
    sample_subgraph,
    sample_subgraph_uniformly,
    sample_wedge,
)
from .verify import enumerate_copies, exact_distribution, success_rate_check, uniformity_test

__version__ = "0.1.0"
