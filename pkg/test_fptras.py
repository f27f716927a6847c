"""
Tests for the color-coded set systems and the approximate counting entry
points, against brute-force counts.
"""

import math
import os
import random
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pytest

from errors import InstanceError, NonMonotonePropertyError, NonSymmetricPropertyError
from exact_lab import brute_count, brute_count_colored, brute_count_labelled, brute_count_motif
from fptras import (
    approx_count_colored,
    approx_count_labelled,
    approx_count_motif,
    approx_count_unlabelled,
    build_motif_set_system,
    build_set_system,
    plan_family,
    union_by_exhaustion,
    union_by_membership,
)
from graphs import Coloring, ColorMultiset, Graph, load_coloring, random_coloring, random_graph
from hashing import build_family
from instances import complete, cycle, petersen, star, star_coloring
from karp_luby import canonical_partition_sizes, exact_union, trial_count
from properties import CONNECTED, EDGELESS, HAMILTONIAN, NON_BIPARTITE, PATH


def within(value, truth, epsilon):
    return abs(float(value) - truth) <= epsilon * truth


# ============================================================================
# Set systems
# ============================================================================

@pytest.mark.parametrize("graph, k, expected", [
    (complete(4), 3, 24),
    (Graph.empty(6), 3, 0),
    (cycle(5), 3, 30),
])
def test_union_is_the_labelled_count(graph, k, expected):
    family = build_family(graph.n, k, "exact-greedy", seed=1)
    system = build_set_system(graph, k, CONNECTED, family)
    assert union_by_exhaustion(system) == expected
    assert union_by_membership(system) == expected
    assert exact_union(system) == expected
    assert sum(canonical_partition_sizes(system)) == expected


@pytest.mark.parametrize("prop", [CONNECTED, HAMILTONIAN, NON_BIPARTITE, PATH])
def test_union_matches_brute_force_on_random_graphs(prop):
    for seed in range(3):
        graph = random_graph(7, 0.5, seed)
        family = build_family(graph.n, 4, "exact-greedy", seed=seed)
        system = build_set_system(graph, 4, prop, family)
        assert exact_union(system) == brute_count_labelled(graph, 4, prop)


@pytest.mark.slow
def test_union_scans_match_brute_force_on_fifty_instances():
    for seed in range(50):
        rng = random.Random(seed)
        k = 2 + seed % 3
        n = rng.randint(max(k, 4), 10)
        graph = random_graph(n, rng.choice((0.3, 0.5, 0.7)), seed)
        family = build_family(n, k, "exact-greedy", seed=seed)
        system = build_set_system(graph, k, CONNECTED, family)
        direct = brute_count_labelled(graph, k, CONNECTED)
        assert union_by_membership(system) == direct, (seed, n, k)
        assert union_by_exhaustion(system) == exact_union(system) == direct, (seed, n, k)


def test_sampled_tuples_belong_to_their_sets():
    graph = random_graph(8, 0.5, seed=4)
    family = build_family(8, 3, "exact-greedy", seed=4)
    system = build_set_system(graph, 3, CONNECTED, family)
    rng = random.Random(0)
    for i in range(system.m):
        if system.size(i):
            v = system.sample(i, rng)
            assert system.contains(i, v)
            assert system.first_index(v) <= i


def test_first_index_is_the_lowest_containing_set():
    graph = cycle(5)
    family = build_family(5, 3, "exact-greedy", seed=2)
    system = build_set_system(graph, 3, CONNECTED, family)
    for v in [(0, 1, 2), (2, 1, 0), (4, 0, 1)]:
        lowest = next(i for i in range(system.m) if system.contains(i, v))
        assert system.first_index(v) == lowest
    assert system.first_index((0, 2, 4)) is None


def test_non_monotone_property_is_rejected():
    family = build_family(5, 2, "exact-greedy")
    with pytest.raises(NonMonotonePropertyError):
        build_set_system(cycle(5), 2, EDGELESS, family)


def test_motif_union_matches_brute_force():
    graph = random_graph(7, 0.6, seed=9)
    coloring = random_coloring(7, 2, seed=10)
    motif = ColorMultiset.from_counts({1: 2, 2: 1})
    family = build_family(7, 3, "exact-greedy", seed=3)
    system = build_motif_set_system(graph, coloring, motif, CONNECTED, family)
    assert exact_union(system) == brute_count_colored(graph, coloring, motif, CONNECTED)
    assert union_by_membership(system) == exact_union(system)
    assert sum(canonical_partition_sizes(system)) == exact_union(system)


# ============================================================================
# Family planning
# ============================================================================

def test_plan_splits_delta_for_randomized_families():
    plan = plan_family(10, 3, "randomized", 0.1, seed=0)
    assert plan.family.mode == "randomized"
    assert plan.delta_family == plan.delta_estimator == 0.05

    plan = plan_family(10, 3, "auto", 0.1, seed=0)
    assert plan.family.mode == "exact-greedy"
    assert plan.delta_family == 0.0 and plan.delta_estimator == 0.1


def test_plan_rejects_k_above_n():
    with pytest.raises(InstanceError):
        plan_family(3, 4, "auto", 0.1, seed=0)


# ============================================================================
# Approximate counts
# ============================================================================

def test_c5_connected_triples():
    labelled = approx_count_labelled(cycle(5), 3, CONNECTED, 0.1, 0.05, seed=1)
    family = plan_family(5, 3, "auto", 0.05, seed=1).family
    system = build_set_system(cycle(5), 3, CONNECTED, family)
    assert labelled.m == system.m
    assert labelled.trial_rule == "sets"
    assert labelled.trials == trial_count(system.m, 0.1, 0.05)
    unlabelled = approx_count_unlabelled(cycle(5), 3, CONNECTED, 0.1, 0.05, seed=1)
    assert within(labelled, 30, 0.1)
    assert within(unlabelled, 5, 0.1)
    assert unlabelled.divisor == 6
    assert unlabelled.family_mode == "exact-greedy"


def test_multiplicity_trial_rule_is_opt_in():
    default = approx_count_labelled(cycle(5), 3, CONNECTED, 0.2, 0.05, seed=4)
    bounded = approx_count_labelled(cycle(5), 3, CONNECTED, 0.2, 0.05, seed=4, trial_rule="multiplicity")
    assert bounded.trial_rule == "multiplicity"
    assert bounded.multiplicity == default.multiplicity <= default.m
    assert bounded.trials == trial_count(bounded.multiplicity, 0.2, 0.05) < default.trials
    assert within(bounded, 30, 0.2)


def test_k4_connected_triples():
    assert within(approx_count_labelled(complete(4), 3, CONNECTED, 0.1, 0.05, seed=2), 24, 0.1)
    assert within(approx_count_unlabelled(complete(4), 3, CONNECTED, 0.1, 0.05, seed=2), 4, 0.1)


def test_edgeless_host_counts_zero():
    estimate = approx_count_unlabelled(Graph.empty(6), 3, CONNECTED, 0.1, 0.05, seed=3)
    assert estimate.value == 0 and estimate.trials == 0


def test_equal_seeds_give_equal_estimates():
    graph = random_graph(8, 0.4, seed=1)
    first = approx_count_labelled(graph, 3, NON_BIPARTITE, 0.2, 0.1, seed=5)
    assert approx_count_labelled(graph, 3, NON_BIPARTITE, 0.2, 0.1, seed=5) == first


def test_worker_count_does_not_change_the_estimate():
    graph = random_graph(8, 0.5, seed=2)
    single = approx_count_labelled(graph, 3, CONNECTED, 0.2, 0.1, seed=6, workers=1)
    pooled = approx_count_labelled(graph, 3, CONNECTED, 0.2, 0.1, seed=6, workers=2)
    assert single.trials > 4096
    assert pooled == single


def test_randomized_family_estimate():
    truth = brute_count(cycle(7), 3, CONNECTED)
    estimate = approx_count_unlabelled(cycle(7), 3, CONNECTED, 0.2, 0.1, seed=8, family_mode="randomized")
    assert estimate.family_mode == "randomized"
    assert within(estimate, truth, 0.2)


def test_path_property_needs_labelled_counting():
    with pytest.raises(NonSymmetricPropertyError):
        approx_count_unlabelled(cycle(5), 3, PATH, 0.1, 0.05, seed=0)
    graph = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert brute_count_labelled(graph, 3, PATH) == 4
    assert within(approx_count_labelled(graph, 3, PATH, 0.1, 0.05, seed=0), 4, 0.1)


def test_k_above_n_is_rejected():
    with pytest.raises(InstanceError):
        approx_count_labelled(cycle(3), 4, CONNECTED, 0.1, 0.05, seed=0)


@pytest.mark.slow
def test_petersen_four_vertex_connected_sets():
    truth = brute_count(petersen(), 4, CONNECTED)
    estimate = approx_count_unlabelled(petersen(), 4, CONNECTED, 0.1, 0.05, seed=11)
    assert within(estimate, truth, 0.1)


@pytest.mark.slow
def test_random_instances_stay_within_epsilon():
    misses = 0
    for seed in range(20):
        graph = random_graph(9, 0.4, seed)
        truth = brute_count(graph, 4, CONNECTED)
        if truth and not within(approx_count_unlabelled(graph, 4, CONNECTED, 0.2, 0.1, seed=seed), truth, 0.2):
            misses += 1
    assert misses <= 2


def _cycle5_triples(seed):
    return approx_count_unlabelled(cycle(5), 3, CONNECTED, 0.1, 0.05, seed=seed), 5


def _petersen_four_sets(seed):
    estimate = approx_count_unlabelled(petersen(), 4, CONNECTED, 0.1, 0.05, seed=seed, workers=4,
                                       trial_rule="multiplicity")
    return estimate, brute_count(petersen(), 4, CONNECTED)


def _star_motif(seed):
    coloring = star_coloring(4)
    motif = ColorMultiset.parse("red:1,blue:2", coloring)
    estimate = approx_count_motif(star(4), coloring, motif, 0.1, 0.05, seed=seed, workers=4,
                                  trial_rule="multiplicity")
    return estimate, 3


@pytest.mark.slow
@pytest.mark.parametrize("run", [_cycle5_triples, _petersen_four_sets, _star_motif])
def test_ninety_percent_of_seeded_estimates_within_ten_percent(run):
    hits = 0
    for seed in range(200):
        estimate, truth = run(seed)
        hits += within(estimate, truth, 0.1)
    assert hits >= 180


@pytest.mark.slow
def test_motifs_with_repeated_colors_against_brute_force():
    misses = 0
    for seed in range(30):
        rng = random.Random(seed)
        n = 5 + seed % 6
        k = 2 + seed % 3
        graph = random_graph(n, rng.choice((0.4, 0.6)), seed)
        # fewer colors than motif positions
        coloring = random_coloring(n, max(1, k - 1), seed + 1)
        chosen = rng.sample(range(n), k)
        motif = ColorMultiset.from_colors(coloring[v] for v in chosen)
        assert any(count > 1 for _, count in motif.counts)

        truth = brute_count_motif(graph, coloring, motif)
        assert brute_count_colored(graph, coloring, motif, CONNECTED) == truth * math.factorial(k)
        estimate = approx_count_motif(graph, coloring, motif, 0.2, 0.05, seed=seed, trial_rule="multiplicity")
        if truth == 0:
            assert estimate.value == 0, seed
        elif not within(estimate, truth, 0.2):
            misses += 1
    assert misses <= 3


# ============================================================================
# Motifs
# ============================================================================

def test_star_motifs():
    graph, coloring = star(4), star_coloring(4)
    assert brute_count_motif(graph, coloring, ColorMultiset.parse("red:1,blue:2", coloring)) == 3
    assert brute_count_motif(graph, coloring, ColorMultiset.parse("blue:3", coloring)) == 0

    estimate = approx_count_motif(graph, coloring, ColorMultiset.parse("red:1,blue:2", coloring), 0.25, 0.05, seed=1)
    assert within(estimate, 3, 0.25)
    assert approx_count_motif(graph, coloring, ColorMultiset.parse("blue:3", coloring), 0.1, 0.05, seed=1).value == 0


def test_monochromatic_triangle():
    coloring = load_coloring("0 red\n1 red\n2 red\n", 3)
    motif = ColorMultiset.parse("red:3", coloring)
    assert brute_count_motif(complete(3), coloring, motif) == 1
    assert within(approx_count_motif(complete(3), coloring, motif, 0.2, 0.05, seed=2), 1, 0.2)


def test_unknown_motif_color_counts_zero():
    coloring = Coloring.of([1, 1, 2, 2])
    motif = ColorMultiset.parse("green:1,1:1", coloring)
    assert brute_count_motif(complete(4), coloring, motif) == 0
    assert approx_count_motif(complete(4), coloring, motif, 0.1, 0.05, seed=0).value == 0


def test_colored_count_with_another_property():
    graph = random_graph(7, 0.7, seed=21)
    coloring = random_coloring(7, 2, seed=22)
    motif = ColorMultiset.from_counts({1: 2, 2: 1})
    truth = brute_count_colored(graph, coloring, motif, NON_BIPARTITE)
    estimate = approx_count_colored(graph, coloring, motif, NON_BIPARTITE, 0.2, 0.05, seed=3)
    if truth:
        assert within(estimate, truth, 0.2)
    else:
        assert estimate.value == 0
