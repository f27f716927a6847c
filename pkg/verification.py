"""
Identity Suites

Each suite checks one family of exact identities on the partition lattice,
the reduction gadgets or the counting oracles, and returns one
IdentityResult per checked instance. The verify workflow runs the suites in
SUITE_ORDER; the report fails if any result fails.
"""

import random
import time
from typing import Any, Callable, Dict, Iterator, List, Tuple

import config
from errors import CountingError
from exact_lab import (
    brute_colorful_connected,
    brute_count_cliques,
    brute_count_labelled,
    brute_count_motif,
    cliques_via_reduction,
    colorful_subsets,
    connectivity_partition,
    gadget_graph,
    lattice_residual,
    multicolour_connected_via_ie,
    set_motif,
)
from fptras import build_set_system, union_by_exhaustion, union_by_membership
from graphs import Coloring, Graph, is_connected_subset, random_coloring, random_graph
from hashing import build_family
from karp_luby import exact_union
from lattice import indicator, leq, meet, meet_matrix_det, mobius_product, mobius_recursive, partitions
from models import IdentityResult
from properties import CONNECTED, minimal_patterns_by_filtering, prufer_trees
from state import SuiteSettings

Suite = Callable[[SuiteSettings], List[IdentityResult]]


def _result(settings: SuiteSettings, name: str, parameters: Dict[str, Any], passed: bool,
            detail: str, started: float) -> IdentityResult:
    elapsed = round((time.perf_counter() - started) * 1000, 3) if settings["timing"] else None
    return IdentityResult(name=name, parameters=parameters, passed=passed, detail=detail, elapsed_ms=elapsed)


def _random_instances(settings: SuiteSettings, suite: str, n_low: int, n_high: int,
                      colors: int) -> Iterator[Tuple[Dict[str, Any], Graph, Coloring]]:
    """Seeded random colored graphs; every parameter is echoed into the result."""
    rng = random.Random(f"{settings['seed']}:{suite}")
    for i in range(settings["instances"]):
        n = rng.randint(n_low, n_high)
        p = rng.choice((0.3, 0.5, 0.7))
        seed = rng.randrange(2 ** 31)
        parameters = {"instance": i, "n": n, "p": p, "seed": seed, "k": colors}
        yield parameters, random_graph(n, p, seed), random_coloring(n, colors, seed + 1)


# ============================================================================
# Lattice suites
# ============================================================================

def mobius_values(settings: SuiteSettings) -> List[IdentityResult]:
    """Closed form μ(0̂, P) = (-1)^r r! against the recursive definition."""
    results = []
    for k in range(1, min(settings["k_max"], config.MEET_MATRIX_MAX_K) + 1):
        started = time.perf_counter()
        table = partitions(k)
        memo: Dict[Tuple[int, int], int] = {}
        wrong = [
            str(p) for x, p in enumerate(table.partitions)
            if mobius_recursive(table, 0, x, memo) != table.mobius[x]
        ]
        detail = f"{table.bell} partitions agree" if not wrong else f"mismatch at {', '.join(wrong[:3])}"
        results.append(_result(settings, "mobius_values", {"k": k, "bell": table.bell}, not wrong, detail, started))
    return results


def meet_matrix_determinant(settings: SuiteSettings) -> List[IdentityResult]:
    """det(f(P_i ∧ P_j)) = ∏ μ(0̂, P) ≠ 0, both sides computed separately."""
    results = []
    top_k = min(settings["k_max"], config.MEET_MATRIX_MAX_K)
    fault_k = 2 if top_k >= 2 else 1
    for k in range(1, top_k + 1):
        started = time.perf_counter()
        flip = None
        if settings["inject_fault"] and k == fault_k:
            last = partitions(k).bell - 1
            flip = (last, last)
        det = meet_matrix_det(k, flip)
        product = mobius_product(k)
        passed = det == product and det != 0
        parameters = {"k": k, "fault_injected": flip is not None}
        results.append(_result(settings, "meet_matrix_determinant", parameters, passed,
                               f"det = {det}, product of Möbius values = {product}", started))
    return results


def lattice_laws(settings: SuiteSettings) -> List[IdentityResult]:
    """Meet is commutative, idempotent and associative; P ≤ Q iff P ∧ Q = P."""
    results = []
    for k in range(1, min(settings["k_max"], config.MEET_MATRIX_MAX_K) + 1):
        started = time.perf_counter()
        table = partitions(k)
        ps = table.partitions
        # table_of_meets[i][j] is the index of P_i ∧ P_j
        table_of_meets = [[table.index[meet(p, q)] for q in ps] for p in ps]
        violations = []
        for i, p in enumerate(ps):
            row = table_of_meets[i]
            if row[i] != i:
                violations.append(f"idempotence at {p}")
            for j, q in enumerate(ps):
                ij = row[j]
                if ij != table_of_meets[j][i]:
                    violations.append(f"commutativity at {p}, {q}")
                if leq(p, q) != (ij == i):
                    violations.append(f"order at {p}, {q}")
                left = table_of_meets[ij]
                right_row = table_of_meets[j]
                for r in range(len(ps)):
                    if left[r] != row[right_row[r]]:
                        violations.append(f"associativity at {p}, {q}, {ps[r]}")
        detail = "all laws hold" if not violations else "; ".join(violations[:3])
        results.append(_result(settings, "lattice_laws", {"k": k}, not violations, detail, started))
    return results


# ============================================================================
# Reduction suites
# ============================================================================

def gadget_connectivity(settings: SuiteSettings) -> List[IdentityResult]:
    """G_i[U ∪ hubs] is connected iff P(U) ∧ P_i is the one-block partition."""
    results = []
    k = min(settings["k_max"], 3)
    table = partitions(k)
    for parameters, graph, coloring in _random_instances(settings, "gadget_connectivity", 4, 7, k):
        started = time.perf_counter()
        mismatches = 0
        checked = 0
        gadgets = [gadget_graph(graph, coloring, p) for p in table.partitions]
        for u in colorful_subsets(coloring, k):
            p_u = connectivity_partition(graph, coloring, u)
            for p_i, (gadget, _) in zip(table.partitions, gadgets):
                hubs = range(graph.n, graph.n + len(p_i.blocks))
                connected = is_connected_subset(gadget, list(u) + list(hubs))
                checked += 1
                if connected != (indicator(meet(p_u, p_i)) == 1):
                    mismatches += 1
        results.append(_result(settings, "gadget_connectivity", parameters, mismatches == 0,
                               f"{checked} (set, partition) pairs, {mismatches} mismatches", started))
    return results


def linear_system(settings: SuiteSettings) -> List[IdentityResult]:
    """A·N from classifying colorful sets equals z from the gadget oracle."""
    results = []
    k = min(settings["k_max"], 3)
    for parameters, graph, coloring in _random_instances(settings, "linear_system", 4, 8, k):
        started = time.perf_counter()
        product, z = lattice_residual(graph, coloring, k, brute_colorful_connected)
        results.append(_result(settings, "linear_system", parameters, product == z,
                               f"A·N = {product}, z = {z}", started))
    return results


def inclusion_exclusion(settings: SuiteSettings) -> List[IdentityResult]:
    """Signed sum of plain connected counts over color subsets = colorful connected count."""
    results = []
    k = min(settings["k_max"], 3)
    for parameters, graph, coloring in _random_instances(settings, "inclusion_exclusion", 3, 9, k):
        started = time.perf_counter()
        via_ie = multicolour_connected_via_ie(graph, coloring, k)
        direct = brute_colorful_connected(graph, coloring, k)
        results.append(_result(settings, "inclusion_exclusion", parameters, via_ie == direct,
                               f"inclusion-exclusion {via_ie}, direct {direct}", started))
    return results


def reduction_chain(settings: SuiteSettings) -> List[IdentityResult]:
    """Cliques through blow-up, lattice inversion and inclusion-exclusion equal the direct count."""
    results = []
    rng = random.Random(f"{settings['seed']}:reduction_chain")
    k_top = min(settings["k_max"], 3)
    for i in range(settings["instances"]):
        started = time.perf_counter()
        k = rng.randint(2, max(2, k_top))
        n = rng.randint(3, 5)
        p = rng.choice((0.4, 0.6, 0.8))
        seed = rng.randrange(2 ** 31)
        graph = random_graph(n, p, seed)
        direct = brute_count_cliques(graph, k)
        parameters = {"instance": i, "n": n, "p": p, "seed": seed, "k": k}
        try:
            via_chain = cliques_via_reduction(graph, k)
        except CountingError as e:
            results.append(_result(settings, "reduction_chain", parameters, False, str(e), started))
            continue
        results.append(_result(settings, "reduction_chain", parameters, via_chain == direct,
                               f"chain {via_chain}, direct {direct}", started))
    return results


# ============================================================================
# Counting-oracle suites
# ============================================================================

def cayley_formula(settings: SuiteSettings) -> List[IdentityResult]:
    """Edge-minimal connected patterns are the k^(k-2) labelled trees."""
    results = []
    for k in range(2, min(settings["k_max"], config.PATTERN_ENUM_MAX_K) + 1):
        started = time.perf_counter()
        filtered = minimal_patterns_by_filtering(CONNECTED, k)
        trees = prufer_trees(k)
        expected = k ** (k - 2)
        passed = len(filtered) == expected and tuple(filtered) == tuple(trees)
        results.append(_result(settings, "cayley_formula", {"k": k}, passed,
                               f"filtered {len(filtered)}, Prüfer {len(trees)}, k^(k-2) = {expected}", started))
    return results


def motif_multicolour(settings: SuiteSettings) -> List[IdentityResult]:
    """The motif {1..k} counts exactly the colorful connected k-sets."""
    results = []
    k = min(settings["k_max"], 4)
    for parameters, graph, coloring in _random_instances(settings, "motif_multicolour", 4, 9, k):
        started = time.perf_counter()
        motif = brute_count_motif(graph, coloring, set_motif(k))
        colorful = brute_colorful_connected(graph, coloring, k)
        results.append(_result(settings, "motif_multicolour", parameters, motif == colorful,
                               f"motif count {motif}, colorful connected {colorful}", started))
    return results


def set_system_union(settings: SuiteSettings) -> List[IdentityResult]:
    """The union of the color-coded sets is exactly the set of satisfying tuples."""
    results = []
    k = min(settings["k_max"], 3)
    for parameters, graph, _ in _random_instances(settings, "set_system_union", max(k, 4), 7, k):
        started = time.perf_counter()
        family = build_family(graph.n, k, "exact-greedy", seed=parameters["seed"])
        system = build_set_system(graph, k, CONNECTED, family)
        by_tuples = union_by_exhaustion(system)
        by_membership = union_by_membership(system)
        by_sets = exact_union(system)
        direct = brute_count_labelled(graph, k, CONNECTED)
        passed = by_tuples == by_membership == by_sets == direct
        results.append(_result(settings, "set_system_union", parameters, passed,
                               f"union {by_sets} (tuple scan {by_tuples}, membership scan {by_membership}), "
                               f"brute force {direct}", started))
    return results


SUITES: Dict[str, Suite] = {
    "mobius_values": mobius_values,
    "meet_matrix_determinant": meet_matrix_determinant,
    "lattice_laws": lattice_laws,
    "cayley_formula": cayley_formula,
    "gadget_connectivity": gadget_connectivity,
    "linear_system": linear_system,
    "inclusion_exclusion": inclusion_exclusion,
    "motif_multicolour": motif_multicolour,
    "set_system_union": set_system_union,
    "reduction_chain": reduction_chain,
}

SUITE_ORDER: List[str] = list(SUITES)


def run_suite(name: str, settings: SuiteSettings) -> List[IdentityResult]:
    return SUITES[name](settings)
