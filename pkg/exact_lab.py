"""
Exact Lab

Brute-force oracles for every counting problem in the package, and an
executable rendition of the hardness chain for colorful independent sets:

    #k-cliques(G)
      = #colorful independent sets in the clique blow-up / k!
      = N_{1̂} from the system A·N = z over the partition lattice, where
        z_i counts colorful connected sets in gadget graphs G_i
      = inclusion-exclusion over color classes of plain connected counts.

Every enumeration checks its cap first.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Iterable, List, Sequence, Tuple

import config
from colorful import ColoredPattern
from errors import ColoringError, InternalError, ResourceCapError
from graphs import Coloring, ColorMultiset, Graph, component_mask, induced_subgraph, mask_is_connected
from lattice import LatticeTable, Partition, indicator, partitions
from properties import CONNECTED, Property, pattern_of_host
from utils.sympy_linear import integer_determinant, matrix_vector, solve_rational

MulticolourCounter = Callable[[Graph, Coloring, int], int]
PlainCounter = Callable[[Graph, int], int]


def _check_brute_cap(n: int, k: int) -> None:
    if n > config.BRUTE_MAX_N:
        raise ResourceCapError("n for brute-force counting", n, config.BRUTE_MAX_N, "SUBCOUNT_BRUTE_MAX_N")
    if k > config.BRUTE_MAX_K:
        raise ResourceCapError("k for brute-force counting", k, config.BRUTE_MAX_K, "SUBCOUNT_BRUTE_MAX_K")


def _mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


# ============================================================================
# Brute-force counts
# ============================================================================

def brute_count(graph: Graph, k: int, prop: Property) -> int:
    """
    Number of k-subsets U with φ(G[U]) = 1.

    For a non-symmetric property a subset counts when some ordering of it
    satisfies φ.
    """
    _check_brute_cap(graph.n, k)
    if k > graph.n:
        return 0
    if prop is CONNECTED:
        return sum(1 for u in itertools.combinations(range(graph.n), k) if mask_is_connected(graph.rows, _mask(u)))
    if prop.symmetric:
        return sum(1 for u in itertools.combinations(range(graph.n), k) if prop(pattern_of_host(graph, u)))
    return sum(
        1
        for u in itertools.combinations(range(graph.n), k)
        if any(prop(pattern_of_host(graph, order)) for order in itertools.permutations(u))
    )


def brute_count_labelled(graph: Graph, k: int, prop: Property) -> int:
    """Number of tuples of k distinct vertices whose induced labelled graph satisfies φ."""
    _check_brute_cap(graph.n, k)
    if k > graph.n:
        return 0
    if prop.symmetric:
        return brute_count(graph, k, prop) * math.factorial(k)
    return sum(
        1
        for u in itertools.combinations(range(graph.n), k)
        for order in itertools.permutations(u)
        if prop(pattern_of_host(graph, order))
    )


def brute_count_motif(graph: Graph, coloring: Coloring, motif: ColorMultiset) -> int:
    """Number of k-subsets U with G[U] connected and color multiset exactly M."""
    k = motif.size
    _check_brute_cap(graph.n, k)
    if k > graph.n:
        return 0
    wanted = motif.as_list()
    return sum(
        1
        for u in itertools.combinations(range(graph.n), k)
        if sorted(coloring[v] for v in u) == wanted and mask_is_connected(graph.rows, _mask(u))
    )


def brute_count_colored(graph: Graph, coloring: Coloring, motif: ColorMultiset, prop: Property) -> int:
    """Labelled count: tuples of distinct vertices realizing M and satisfying φ."""
    k = motif.size
    _check_brute_cap(graph.n, k)
    if k > graph.n:
        return 0
    wanted = motif.as_list()
    return sum(
        1
        for u in itertools.combinations(range(graph.n), k)
        if sorted(coloring[v] for v in u) == wanted
        for order in itertools.permutations(u)
        if prop(pattern_of_host(graph, order))
    )


def brute_count_colorful(graph: Graph, coloring: Coloring, cp: ColoredPattern) -> int:
    """Colour-preserving copies of a colorful pattern, by trying every color-respecting choice."""
    classes = coloring.classes()
    choices = [classes.get(cp.color(label), ()) for label in range(1, cp.pattern.k + 1)]
    return sum(
        1
        for pick in itertools.product(*choices)
        if all(graph.has_edge(pick[a - 1], pick[b - 1]) for a, b in cp.pattern.edges)
    )


def colorful_subsets(coloring: Coloring, k: int) -> Iterable[Tuple[int, ...]]:
    """Vertex sets holding each color 1..k exactly once."""
    classes = coloring.classes()
    return itertools.product(*(classes.get(color, ()) for color in range(1, k + 1)))


def brute_colorful_connected(graph: Graph, coloring: Coloring, k: int) -> int:
    return sum(1 for u in colorful_subsets(coloring, k) if mask_is_connected(graph.rows, _mask(u)))


def brute_colorful_independent(graph: Graph, coloring: Coloring, k: int) -> int:
    return sum(
        1
        for u in colorful_subsets(coloring, k)
        if not any(graph.has_edge(a, b) for a, b in itertools.combinations(u, 2))
    )


def brute_count_cliques(graph: Graph, k: int) -> int:
    _check_brute_cap(graph.n, k)
    return sum(
        1
        for u in itertools.combinations(range(graph.n), k)
        if all(graph.has_edge(a, b) for a, b in itertools.combinations(u, 2))
    )


def count_connected_subsets(graph: Graph, k: int) -> int:
    """N_k(G): connected induced k-vertex subgraphs, uncolored."""
    if k > graph.n:
        return 0
    return sum(1 for u in itertools.combinations(range(graph.n), k) if mask_is_connected(graph.rows, _mask(u)))


# ============================================================================
# Connectivity partitions and gadgets
# ============================================================================

def connectivity_partition(graph: Graph, coloring: Coloring, vertices: Sequence[int]) -> Partition:
    """
    P(U): colors i and j share a block iff their U-vertices lie in the same
    component of G[U]. U must carry each color 1..k exactly once.
    """
    k = len(vertices)
    if sorted(coloring[v] for v in vertices) != list(range(1, k + 1)):
        raise ColoringError(f"vertex set {tuple(vertices)} is not colorful over colors 1..{k}")
    allowed = _mask(vertices)
    labels = [0] * k
    for v in vertices:
        labels[coloring[v] - 1] = component_mask(graph.rows, v, allowed)
    return Partition.from_labels(labels)


def gadget_graph(graph: Graph, coloring: Coloring, partition: Partition) -> Tuple[Graph, Coloring]:
    """
    G plus one vertex x_j per block X_j (vertex n + j - 1, color k + j),
    adjacent to every vertex whose color lies in X_j.
    """
    k = partition.k
    n = graph.n
    edges = list(graph.edges)
    colors = list(coloring.colors)
    for j, block in enumerate(partition.blocks):
        hub = n + j
        members = set(block)
        edges.extend((v, hub) for v in range(n) if coloring[v] in members)
        colors.append(k + j + 1)
    return Graph.from_edges(n + len(partition.blocks), edges), Coloring.of(colors)


def classify_colorful_subsets(graph: Graph, coloring: Coloring, k: int, table: LatticeTable) -> List[int]:
    """N_j = number of colorful k-sets U with P(U) = P_j."""
    counts = [0] * table.bell
    for u in colorful_subsets(coloring, k):
        counts[table.index[connectivity_partition(graph, coloring, u)]] += 1
    return counts


def gadget_vector(graph: Graph, coloring: Coloring, k: int, table: LatticeTable,
                  oracle: MulticolourCounter) -> List[int]:
    """z_i = colorful connected (k + ℓ_i)-sets of the gadget graph for P_i."""
    z = []
    for p in table.partitions:
        gadget, colors = gadget_graph(graph, coloring, p)
        z.append(oracle(gadget, colors, k + len(p.blocks)))
    return z


def lattice_system(table: LatticeTable) -> List[List[int]]:
    """A[i][j] = f(P_i ∧ P_j) with f the indicator of 0̂."""
    return [
        [indicator(table.partitions[table.meet_index(i, j)]) for j in range(table.bell)]
        for i in range(table.bell)
    ]


def colorful_independent_sets_via_oracle(graph: Graph, coloring: Coloring, k: int,
                                         oracle: MulticolourCounter) -> int:
    """
    Colorful independent k-sets from multicolour-connected counts only:
    solve A·N = z and read off N for the all-singletons partition.

    Raises:
        InternalError: singular system or a non-integral solution
    """
    if k > config.REDUCTION_MAX_K:
        raise ResourceCapError("k for the lattice reduction", k, config.REDUCTION_MAX_K, "SUBCOUNT_REDUCTION_MAX_K")
    if not coloring.palette <= set(range(1, k + 1)):
        raise ColoringError(f"colors must lie in 1..{k}")
    table = partitions(k)
    a = lattice_system(table)
    if integer_determinant(a) == 0:
        raise InternalError(f"lattice system for k={k} is singular")
    z = gadget_vector(graph, coloring, k, table, oracle)
    solution = solve_rational(a, z)
    top = solution[-1]
    if top.denominator != 1 or top < 0:
        raise InternalError(f"oracle answers give a non-integral count {top}")
    return int(top)


def lattice_residual(graph: Graph, coloring: Coloring, k: int, oracle: MulticolourCounter) -> Tuple[List[int], List[int]]:
    """(A·N, z) for N from direct classification; equal when the oracle is exact."""
    table = partitions(k)
    n_vector = classify_colorful_subsets(graph, coloring, k, table)
    return matrix_vector(lattice_system(table), n_vector), gadget_vector(graph, coloring, k, table, oracle)


# ============================================================================
# Inclusion-exclusion and the clique blow-up
# ============================================================================

def multicolour_connected_via_ie(graph: Graph, coloring: Coloring, k: int,
                                 plain_counter: PlainCounter = count_connected_subsets) -> int:
    """Σ over nonempty C ⊆ [k] of (-1)^(k-|C|) N_k(G_C), G_C keeping vertices colored in C."""
    # gadget graphs carry up to 2k colors
    if k > 2 * config.REDUCTION_MAX_K:
        raise ResourceCapError("colors for inclusion-exclusion", k, 2 * config.REDUCTION_MAX_K, "SUBCOUNT_REDUCTION_MAX_K")
    total = 0
    for size in range(1, k + 1):
        sign = -1 if (k - size) % 2 else 1
        for colors in itertools.combinations(range(1, k + 1), size):
            keep = set(colors)
            sub = induced_subgraph(graph, [v for v in range(graph.n) if coloring[v] in keep])
            total += sign * plain_counter(sub, k)
    return total


def clique_blowup(graph: Graph, k: int) -> Tuple[Graph, Coloring]:
    """
    Replace every vertex v of complement(G) by a k-clique (v, 1..k) colored
    1..k; two cliques are fully joined iff their vertices are adjacent in
    complement(G). Vertex (v, j) is numbered v*k + j - 1.
    """
    n = graph.n
    edges = []
    for v in range(n):
        base = v * k
        edges.extend((base + a, base + b) for a, b in itertools.combinations(range(k), 2))
    for v, w in itertools.combinations(range(n), 2):
        if not graph.has_edge(v, w):
            edges.extend((v * k + a, w * k + b) for a in range(k) for b in range(k))
    colors = [j + 1 for v in range(n) for j in range(k)]
    return Graph.from_edges(n * k, edges), Coloring.of(colors)


def cliques_via_reduction(graph: Graph, k: int, plain_counter: PlainCounter = count_connected_subsets) -> int:
    """#k-cliques through blow-up, lattice inversion and inclusion-exclusion."""

    def oracle(g: Graph, c: Coloring, colors: int) -> int:
        return multicolour_connected_via_ie(g, c, colors, plain_counter)

    blown, coloring = clique_blowup(graph, k)
    alpha = colorful_independent_sets_via_oracle(blown, coloring, k, oracle)
    cliques, remainder = divmod(alpha, math.factorial(k))
    if remainder:
        raise InternalError(f"{alpha} colorful independent sets is not a multiple of {k}!")
    return cliques


def set_motif(k: int) -> ColorMultiset:
    """The motif {1, 2, ..., k}."""
    return ColorMultiset.from_colors(range(1, k + 1))
