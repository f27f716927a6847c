"""
Properties and Labelled Patterns

A labelled pattern is a graph on the label set {1..k}; two patterns are equal
iff their edge sets are equal, so the "is a labelled subgraph of" relation is
plain edge-set inclusion. A property is a predicate on labelled patterns plus
the metadata the approximation pipeline needs: whether it is symmetric
(label-invariant), whether it is monotone (closed under adding edges), a
treewidth bound for its edge-minimal patterns and, optionally, a direct
enumerator for those minimal patterns.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from sympy.combinatorics.prufer import Prufer

import config
from errors import NonMonotonePropertyError, ParseError, PatternError, PropertyError, ResourceCapError
from graphs import Graph, iter_bits, mask_is_connected

Edge = Tuple[int, int]


# ============================================================================
# Labelled patterns
# ============================================================================

def label_pairs(k: int) -> List[Edge]:
    """All label pairs (i, j), 1 ≤ i < j ≤ k, in lexicographic order."""
    return list(itertools.combinations(range(1, k + 1), 2))


@dataclass(frozen=True)
class LabelledPattern:
    """A simple graph on the labels {1..k}."""
    k: int
    edges: FrozenSet[Edge]

    @classmethod
    def of(cls, k: int, edges: Iterable[Tuple[int, int]] = ()) -> "LabelledPattern":
        normalized = set()
        for a, b in edges:
            if a == b:
                raise PatternError(f"self-loop at label {a}")
            if not (1 <= a <= k and 1 <= b <= k):
                raise PatternError(f"edge {a}-{b} uses a label outside 1..{k}")
            normalized.add((a, b) if a < b else (b, a))
        return cls(k=k, edges=frozenset(normalized))

    @classmethod
    def from_mask(cls, k: int, mask: int, pairs: Optional[Sequence[Edge]] = None) -> "LabelledPattern":
        pairs = pairs if pairs is not None else label_pairs(k)
        return cls(k=k, edges=frozenset(pairs[i] for i in iter_bits(mask)))

    def mask(self, pairs: Optional[Sequence[Edge]] = None) -> int:
        pairs = pairs if pairs is not None else label_pairs(self.k)
        return sum(1 << i for i, pair in enumerate(pairs) if pair in self.edges)

    def sort_key(self) -> Tuple[int, Tuple[Edge, ...]]:
        """Canonical order: fewer edges first, then lexicographic edge lists."""
        return (len(self.edges), tuple(sorted(self.edges)))

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    @property
    def rows(self) -> Tuple[int, ...]:
        """Packed adjacency over 0-based positions (label i ↦ bit i-1)."""
        rows = [0] * self.k
        for a, b in self.edges:
            rows[a - 1] |= 1 << (b - 1)
            rows[b - 1] |= 1 << (a - 1)
        return tuple(rows)

    def neighbors(self, label: int) -> FrozenSet[int]:
        return frozenset(b if a == label else a for a, b in self.edges if label in (a, b))

    def relabel(self, mapping: Dict[int, int] | Sequence[int]) -> "LabelledPattern":
        """Move label i to mapping[i] (a dict, or a sequence indexed by i-1)."""
        if isinstance(mapping, dict):
            image = mapping
        else:
            image = {i + 1: target for i, target in enumerate(mapping)}
        return LabelledPattern.of(self.k, ((image[a], image[b]) for a, b in self.edges))

    def to_graph(self) -> Graph:
        """The pattern as a 0-based host graph."""
        return Graph.from_edges(self.k, ((a - 1, b - 1) for a, b in self.edges))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(1, self.k + 1))
        g.add_edges_from(self.edges)
        return g

    def format(self) -> str:
        return ",".join(f"{a}-{b}" for a, b in self.sorted_edges()) or "-"


def pattern_subset(p: LabelledPattern, q: LabelledPattern) -> bool:
    """True iff p is a labelled subgraph of q."""
    if p.k != q.k:
        raise PatternError(f"patterns on {p.k} and {q.k} labels are not comparable")
    return p.edges <= q.edges


def pattern_of_host(graph: Graph, vertices: Sequence[int]) -> LabelledPattern:
    """The labelled pattern G[v1..vk]: label i stands for vertices[i-1]."""
    k = len(vertices)
    return LabelledPattern(
        k=k,
        edges=frozenset(
            (i + 1, j + 1)
            for i in range(k)
            for j in range(i + 1, k)
            if graph.has_edge(vertices[i], vertices[j])
        ),
    )


def all_labelled_patterns(k: int) -> Iterator[LabelledPattern]:
    """Every labelled graph on {1..k}, in edge-mask order."""
    pairs = label_pairs(k)
    for mask in range(1 << len(pairs)):
        yield LabelledPattern.from_mask(k, mask, pairs)


# ============================================================================
# Predicates
# ============================================================================

def phi_connected(p: LabelledPattern) -> bool:
    return mask_is_connected(p.rows, (1 << p.k) - 1)


def phi_hamiltonian(p: LabelledPattern) -> bool:
    """Hamiltonian cycle through all k ≥ 3 labels (subset DP)."""
    k = p.k
    if k < 3:
        return False
    rows = p.rows
    full = (1 << k) - 1
    # reach[mask] = bitmask of end vertices of paths from vertex 0 covering mask
    reach = [0] * (1 << k)
    reach[1] = 1
    for mask in range(1, full + 1, 2):
        ends = reach[mask]
        if not ends:
            continue
        for v in iter_bits(ends):
            extend = rows[v] & ~mask
            for w in iter_bits(extend):
                reach[mask | 1 << w] |= 1 << w
    return bool(reach[full] & rows[0])


def phi_non_bipartite(p: LabelledPattern) -> bool:
    return not nx.is_bipartite(p.to_networkx())


def phi_clique(p: LabelledPattern) -> bool:
    return len(p.edges) == p.k * (p.k - 1) // 2


def phi_path(p: LabelledPattern) -> bool:
    """Labels 1, 2, ..., k are consecutive along a path."""
    return all((i, i + 1) in p.edges for i in range(1, p.k))


def phi_edgeless(p: LabelledPattern) -> bool:
    return not p.edges


# ============================================================================
# Direct minimal-pattern enumerators
# ============================================================================

def prufer_trees(k: int) -> Tuple[LabelledPattern, ...]:
    """All k^(k-2) labelled trees on {1..k}, decoded from Prüfer sequences."""
    if k < 1:
        raise PatternError("k must be at least 1")
    if k == 1:
        return (LabelledPattern.of(1),)
    if k == 2:
        return (LabelledPattern.of(2, [(1, 2)]),)
    trees = [
        LabelledPattern.of(k, ((a + 1, b + 1) for a, b in Prufer.to_tree(list(seq))))
        for seq in itertools.product(range(k), repeat=k - 2)
    ]
    return tuple(sorted(trees, key=LabelledPattern.sort_key))


def _cycles_on(labels: Sequence[int], k: int) -> Iterator[LabelledPattern]:
    """Each undirected cycle through `labels` once; other labels stay isolated."""
    first, rest = labels[0], labels[1:]
    for order in itertools.permutations(rest):
        if order[0] > order[-1]:
            continue
        ring = (first,) + order
        yield LabelledPattern.of(k, ((ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))))


def hamiltonian_cycles(k: int) -> Tuple[LabelledPattern, ...]:
    """The (k-1)!/2 labelled k-cycles; none for k < 3."""
    if k < 3:
        return ()
    return tuple(sorted(_cycles_on(list(range(1, k + 1)), k), key=LabelledPattern.sort_key))


def odd_cycles(k: int) -> Tuple[LabelledPattern, ...]:
    """Odd cycles on every label subset, the rest of the labels isolated."""
    if k > config.DIRECT_ODD_CYCLE_MAX_K:
        raise ResourceCapError("k for odd-cycle enumeration", k, config.DIRECT_ODD_CYCLE_MAX_K,
                               "SUBCOUNT_DIRECT_ODD_CYCLE_MAX_K")
    found = [
        cycle
        for length in range(3, k + 1, 2)
        for subset in itertools.combinations(range(1, k + 1), length)
        for cycle in _cycles_on(subset, k)
    ]
    return tuple(sorted(found, key=LabelledPattern.sort_key))


def labelled_path(k: int) -> Tuple[LabelledPattern, ...]:
    return (LabelledPattern.of(k, ((i, i + 1) for i in range(1, k))),)


def complete_pattern(k: int) -> Tuple[LabelledPattern, ...]:
    return (LabelledPattern.of(k, label_pairs(k)),)


# ============================================================================
# Properties
# ============================================================================

@dataclass(frozen=True)
class Property:
    """
    A graph property Φ = (φ_1, φ_2, ...) on labelled patterns.

    Attributes:
        name: registry / CLI name
        predicate: labelled pattern → bool
        symmetric: φ is invariant under relabelling
        monotone: φ survives adding edges
        treewidth_bound: bound on the treewidth of minimal patterns, if known
        minimal_enumerator: k → edge-minimal patterns, bypassing exhaustive filtering
        pattern_size: the only k a pattern-list property is defined for
    """
    name: str
    predicate: Callable[[LabelledPattern], bool]
    symmetric: bool = True
    monotone: bool = True
    treewidth_bound: Optional[int] = None
    minimal_enumerator: Optional[Callable[[int], Tuple[LabelledPattern, ...]]] = None
    pattern_size: Optional[int] = None

    def __call__(self, p: LabelledPattern) -> bool:
        return bool(self.predicate(p))


CONNECTED = Property("connected", phi_connected, treewidth_bound=1, minimal_enumerator=prufer_trees)
HAMILTONIAN = Property("hamiltonian", phi_hamiltonian, treewidth_bound=2, minimal_enumerator=hamiltonian_cycles)
NON_BIPARTITE = Property("non-bipartite", phi_non_bipartite, treewidth_bound=2, minimal_enumerator=odd_cycles)
CLIQUE = Property("clique", phi_clique, minimal_enumerator=complete_pattern)
PATH = Property("path", phi_path, symmetric=False, treewidth_bound=1, minimal_enumerator=labelled_path)
EDGELESS = Property("edgeless", phi_edgeless, monotone=False, treewidth_bound=0)

PROPERTIES: Dict[str, Property] = {
    prop.name: prop for prop in (CONNECTED, HAMILTONIAN, NON_BIPARTITE, CLIQUE, PATH, EDGELESS)
}


def get_property(name: str) -> Property:
    try:
        return PROPERTIES[name]
    except KeyError:
        raise PropertyError(f"unknown property {name!r}; choose from {', '.join(sorted(PROPERTIES))}")


def _check_enum_cap(k: int) -> None:
    if k > config.PATTERN_ENUM_MAX_K:
        raise ResourceCapError("k for exhaustive pattern enumeration", k, config.PATTERN_ENUM_MAX_K,
                               "SUBCOUNT_PATTERN_ENUM_MAX_K")


def _filter_minimal(k: int, predicate: Callable[[LabelledPattern], bool]) -> Tuple[LabelledPattern, ...]:
    pairs = label_pairs(k)
    size = 1 << len(pairs)
    satisfied = [predicate(LabelledPattern.from_mask(k, mask, pairs)) for mask in range(size)]
    # below[mask]: some strict sub-pattern of mask satisfies the predicate
    below = [False] * size
    minimal = []
    for mask in range(size):
        hit = False
        for bit in iter_bits(mask):
            sub = mask ^ (1 << bit)
            if satisfied[sub] or below[sub]:
                hit = True
                break
        below[mask] = hit
        if satisfied[mask] and not hit:
            minimal.append(LabelledPattern.from_mask(k, mask, pairs))
    return tuple(sorted(minimal, key=LabelledPattern.sort_key))


@lru_cache(maxsize=None)
def minimal_patterns(prop: Property, k: int) -> Tuple[LabelledPattern, ...]:
    """
    Edge-minimal labelled patterns satisfying the property, in canonical order.

    Uses the property's direct enumerator when it has one; otherwise filters
    all 2^(k choose 2) labelled graphs.

    Raises:
        ResourceCapError: k too large for exhaustive filtering
    """
    if k < 1:
        raise PatternError("k must be at least 1")
    if prop.minimal_enumerator is not None:
        return tuple(sorted(prop.minimal_enumerator(k), key=LabelledPattern.sort_key))
    _check_enum_cap(k)
    return _filter_minimal(k, prop)


def minimal_patterns_by_filtering(prop: Property, k: int) -> Tuple[LabelledPattern, ...]:
    """Edge-minimal patterns by exhaustive filtering, ignoring any direct enumerator."""
    _check_enum_cap(k)
    return _filter_minimal(k, prop)


def check_monotone(prop: Property, k: int) -> bool:
    """True iff no P ⊆ Q has φ(P) = 1 and φ(Q) = 0 (single-edge additions suffice)."""
    if k > config.MONOTONE_CHECK_MAX_K:
        raise ResourceCapError("k for the monotonicity check", k, config.MONOTONE_CHECK_MAX_K,
                               "SUBCOUNT_MONOTONE_CHECK_MAX_K")
    pairs = label_pairs(k)
    size = 1 << len(pairs)
    satisfied = [prop(LabelledPattern.from_mask(k, mask, pairs)) for mask in range(size)]
    for mask in range(size):
        if not satisfied[mask]:
            continue
        missing = (size - 1) & ~mask
        for bit in iter_bits(missing):
            if not satisfied[mask | 1 << bit]:
                return False
    return True


def require_monotone(prop: Property) -> None:
    if not prop.monotone:
        raise NonMonotonePropertyError(
            f"property {prop.name!r} is not monotone; only exact counting accepts it"
        )


# ============================================================================
# Pattern-list properties
# ============================================================================

@dataclass(frozen=True)
class PatternSetPredicate:
    """φ(P) = 1 iff some listed pattern is a labelled subgraph of P."""
    patterns: Tuple[LabelledPattern, ...]

    def __call__(self, p: LabelledPattern) -> bool:
        return any(q.k == p.k and q.edges <= p.edges for q in self.patterns)


def _closed_under_relabelling(k: int, patterns: Sequence[LabelledPattern]) -> bool:
    listed = set(patterns)
    for perm in itertools.permutations(range(1, k + 1)):
        for p in patterns:
            if p.relabel(perm) not in listed:
                return False
    return True


def property_from_patterns(name: str, k: int, patterns: Iterable[LabelledPattern]) -> Property:
    """
    Monotone property generated by an explicit pattern list.

    Only the inclusion-minimal listed patterns are kept. The property is
    declared symmetric iff that minimal list is closed under relabelling.
    """
    from treewidth import tree_decomposition

    listed = {p for p in patterns}
    for p in listed:
        if p.k != k:
            raise PatternError(f"pattern {p.format()} has {p.k} labels, expected {k}")
    minimal = tuple(sorted(
        (p for p in listed if not any(q != p and q.edges <= p.edges for q in listed)),
        key=LabelledPattern.sort_key,
    ))
    bound = max((tree_decomposition(p).width for p in minimal), default=0)
    symmetric = math.factorial(k) <= 5040 and _closed_under_relabelling(k, minimal)

    return Property(
        name=name,
        predicate=PatternSetPredicate(minimal),
        symmetric=symmetric,
        monotone=True,
        treewidth_bound=bound,
        minimal_enumerator=_FixedPatterns(k, minimal),
        pattern_size=k,
    )


@dataclass(frozen=True)
class _FixedPatterns:
    k: int
    patterns: Tuple[LabelledPattern, ...]

    def __call__(self, j: int) -> Tuple[LabelledPattern, ...]:
        return self.patterns if j == self.k else ()


def parse_pattern_edges(k: int, text: str, line_no: int) -> LabelledPattern:
    text = text.strip()
    if text in ("", "-"):
        return LabelledPattern.of(k)
    edges = []
    for item in text.split(","):
        left, sep, right = item.strip().partition("-")
        if not sep:
            raise ParseError(line_no, f"edge {item!r} is not 'u-v'")
        try:
            a, b = int(left), int(right)
        except ValueError:
            raise ParseError(line_no, f"edge {item!r} has a non-integer label")
        if not (1 <= a <= k and 1 <= b <= k):
            raise ParseError(line_no, f"edge {item!r} uses a label outside 1..{k}")
        if a == b:
            raise ParseError(line_no, f"edge {item!r} is a self-loop")
        edges.append((a, b))
    return LabelledPattern.of(k, edges)


def load_pattern_file(text: str, name: str = "patterns") -> Property:
    """
    Parse a pattern list: header "k p", then p lines "u-v,u-v,..." ('-' for
    the edgeless pattern). Lines starting with '#' are comments.
    """
    lines = [
        (line_no, raw.strip())
        for line_no, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.strip().startswith("#")
    ]
    if not lines:
        raise ParseError(1, "missing 'k p' header")
    header_no, header = lines[0]
    tokens = header.split()
    try:
        k, count = (int(t) for t in tokens)
    except ValueError:
        raise ParseError(header_no, f"expected 'k p', found {header!r}")
    if k < 1 or count < 0:
        raise ParseError(header_no, "k must be positive and p non-negative")
    body = lines[1:]
    if len(body) != count:
        raise ParseError(header_no, f"header declares {count} patterns, found {len(body)}")
    patterns = [parse_pattern_edges(k, text, line_no) for line_no, text in body]
    return property_from_patterns(name, k, patterns)


def read_pattern_file(path: str) -> Property:
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    return load_pattern_file(text, name=os.path.splitext(os.path.basename(path))[0])
