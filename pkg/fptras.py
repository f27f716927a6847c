"""
Approximate Counting Pipeline

Approximate counting of k-vertex induced subgraphs with a monotone property,
and of colored motifs, by color coding plus union estimation.

For a hash family F, a permutation σ of {1..k} and an edge-minimal pattern
H, the set A_{f,σ,H} holds the tuples (v_1..v_k) of distinct vertices with
f(v_i) = σ(i) and H ⊆ G[v_1..v_k]. The union over all (f, σ, H) is exactly
the set of tuples whose induced labelled graph satisfies the property, once
F is k-perfect. Each set is the image of the colour-preserving copies of H
(label i colored σ(i)) under θ: copy ↦ (vertex of color σ(1), ..., σ(k)),
so the colorful engine supplies its size and uniform samples.

Motifs add a bijection d from the f-colors {1..k} onto the motif positions
and restrict the host to G_{f,d} = G[{v : c(v) = d(f(v))}].
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, replace
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple

import config
from colorful import ColoredPattern, ColorfulCounter, Embedding
from errors import ColoringError, InstanceError, NonSymmetricPropertyError
from graphs import Coloring, ColorMultiset, Graph
from hashing import HashFamily, build_family
from karp_luby import Estimate, SetSystem, TrialRule, estimate_union
from properties import CONNECTED, LabelledPattern, Property, minimal_patterns, require_monotone

WitnessTuple = Tuple[int, ...]
FamilyChoice = Literal["auto", "exact-greedy", "randomized"]


@dataclass(frozen=True)
class IndexedSetDescriptor:
    family_index: int
    sigma: Tuple[int, ...]
    pattern: LabelledPattern
    d: Optional[Tuple[int, ...]] = None


class ColorCodedSetSystem(SetSystem):
    """
    The sets A_{f,σ,H} in the fixed order f, then σ (lexicographic), then H
    (canonical pattern order).
    """

    def __init__(self, graph: Graph, k: int, patterns: Sequence[LabelledPattern], family: HashFamily):
        if family.n != graph.n or family.k != k:
            raise InstanceError(f"family maps {family.n} vertices to {family.k} colors; need {graph.n} → {k}")
        self.graph = graph
        self.k = k
        self.patterns = tuple(patterns)
        self.family = family
        self.sigmas: List[Tuple[int, ...]] = list(itertools.permutations(range(1, k + 1)))
        self.sigma_rank: Dict[Tuple[int, ...], int] = {s: r for r, s in enumerate(self.sigmas)}
        self._transported: Dict[Tuple[int, int], ColoredPattern] = {}
        self._engines: Dict[object, ColorfulCounter] = {}
        self._counts: Dict[Tuple[object, ColoredPattern], int] = {}
        self._witnesses: Dict[Tuple[object, ColoredPattern], List[Embedding]] = {}
        self._sizes: Optional[List[int]] = None

    # ------------------------------------------------------------------
    # Index layout
    # ------------------------------------------------------------------

    @property
    def block(self) -> int:
        """Sets per family member."""
        return len(self.sigmas) * len(self.patterns)

    @property
    def m(self) -> int:
        return len(self.family) * self.block

    def _split(self, i: int) -> Tuple[int, int, int, int]:
        rest, p = divmod(i, len(self.patterns))
        fi, s = divmod(rest, len(self.sigmas))
        return fi, s, p, 0

    def descriptor(self, i: int) -> IndexedSetDescriptor:
        fi, s, p, _ = self._split(i)
        return IndexedSetDescriptor(fi, self.sigmas[s], self.patterns[p])

    def descriptors(self) -> Iterator[IndexedSetDescriptor]:
        return (self.descriptor(i) for i in range(self.m))

    def _colored(self, s: int, p: int) -> ColoredPattern:
        """H with label i moved to color σ(i), colored by the identity."""
        key = (s, p)
        cp = self._transported.get(key)
        if cp is None:
            cp = ColoredPattern.identity(self.patterns[p].relabel(self.sigmas[s]))
            self._transported[key] = cp
        return cp

    # ------------------------------------------------------------------
    # Host restriction
    # ------------------------------------------------------------------

    def _engine_key(self, fi: int, d: int) -> object:
        return fi

    def _engine(self, fi: int, d: int) -> ColorfulCounter:
        key = self._engine_key(fi, d)
        engine = self._engines.get(key)
        if engine is None:
            engine = ColorfulCounter(self.graph, self.family.members[fi])
            self._engines[key] = engine
        return engine

    # ------------------------------------------------------------------
    # Oracles
    # ------------------------------------------------------------------

    def _count(self, fi: int, s: int, p: int, d: int) -> int:
        cp = self._colored(s, p)
        key = (self._engine_key(fi, d), cp)
        value = self._counts.get(key)
        if value is None:
            value = self._engine(fi, d).count(cp)
            self._counts[key] = value
        return value

    def sizes(self) -> List[int]:
        if self._sizes is None:
            self._sizes = [self._count(*self._split(i)) for i in range(self.m)]
        return self._sizes

    def size(self, i: int) -> int:
        return self.sizes()[i]

    def _to_tuple(self, s: int, embedding: Embedding) -> WitnessTuple:
        return tuple(embedding[color] for color in self.sigmas[s])

    def sample(self, i: int, rng: random.Random) -> WitnessTuple:
        fi, s, p, d = self._split(i)
        cp = self._colored(s, p)
        key = (self._engine_key(fi, d), cp)
        count = self._count(fi, s, p, d)
        if count <= config.SAMPLE_CACHE_LIMIT:
            cached = self._witnesses.get(key)
            if cached is None:
                cached = list(self._engine(fi, d).enumerate(cp))
                self._witnesses[key] = cached
            if cached:
                return self._to_tuple(s, cached[rng.randrange(len(cached))])
        return self._to_tuple(s, self._engine(fi, d).sample(cp, rng))

    def elements(self, i: int) -> Iterator[WitnessTuple]:
        fi, s, p, d = self._split(i)
        for embedding in self._engine(fi, d).enumerate(self._colored(s, p)):
            yield self._to_tuple(s, embedding)

    def _base_contains(self, fi: int, s: int, p: int, v: Sequence[int]) -> bool:
        if len(v) != self.k or len(set(v)) != self.k:
            return False
        f = self.family.members[fi]
        sigma = self.sigmas[s]
        if any(f[x] != sigma[j] for j, x in enumerate(v)):
            return False
        return all(self.graph.has_edge(v[a - 1], v[b - 1]) for a, b in self.patterns[p].edges)

    def contains(self, i: int, v: Sequence[int]) -> bool:
        fi, s, p, _ = self._split(i)
        return self._base_contains(fi, s, p, v)

    def _first_member(self, v: Sequence[int]) -> Optional[Tuple[int, Tuple[int, ...]]]:
        """First family member injective on v, with the colors it gives v."""
        for fi, f in enumerate(self.family.members):
            sigma = tuple(f[x] for x in v)
            if len(set(sigma)) == self.k:
                return fi, sigma
        return None

    def _first_pattern(self, v: Sequence[int]) -> Optional[int]:
        present = {
            (a + 1, b + 1)
            for a in range(self.k)
            for b in range(a + 1, self.k)
            if self.graph.has_edge(v[a], v[b])
        }
        for p, pattern in enumerate(self.patterns):
            if pattern.edges <= present:
                return p
        return None

    def first_index(self, v: Sequence[int]) -> Optional[int]:
        """
        Canonical index of v without scanning: the first f injective on v
        forces σ = f(v), then the first pattern contained in G[v].
        """
        if len(v) != self.k or len(set(v)) != self.k:
            return None
        found = self._first_member(v)
        if found is None:
            return None
        p = self._first_pattern(v)
        if p is None:
            return None
        fi, sigma = found
        return (fi * len(self.sigmas) + self.sigma_rank[sigma]) * len(self.patterns) + p

    def multiplicity_bound(self) -> int:
        # σ is forced by f, so v lies in at most one set per (f, H)
        return len(self.family) * len(self.patterns)


class MotifSetSystem(ColorCodedSetSystem):
    """
    The sets B_{f,σ,H,d}: A_{f,σ,H} evaluated on G_{f,d}, in the order
    f, σ, H, then d (lexicographic over bijections onto motif positions).
    """

    def __init__(self, graph: Graph, coloring: Coloring, motif: ColorMultiset,
                 patterns: Sequence[LabelledPattern], family: HashFamily):
        if coloring.n != graph.n:
            raise ColoringError(f"coloring covers {coloring.n} vertices, graph has {graph.n}")
        if motif.size != family.k:
            raise InstanceError(f"motif has {motif.size} colors but family uses k={family.k}")
        super().__init__(graph, motif.size, patterns, family)
        self.coloring = coloring
        self.motif = motif
        positions = motif.as_list()
        # maps[r][j-1] = motif color that bijection r assigns to f-color j
        self.maps: List[Tuple[int, ...]] = [
            tuple(positions[j] for j in perm) for perm in itertools.permutations(range(self.k))
        ]
        self.first_map: Dict[Tuple[int, ...], int] = {}
        for r, colors in enumerate(self.maps):
            self.first_map.setdefault(colors, r)

    @property
    def m(self) -> int:
        return len(self.family) * self.block * len(self.maps)

    def _split(self, i: int) -> Tuple[int, int, int, int]:
        rest, d = divmod(i, len(self.maps))
        rest, p = divmod(rest, len(self.patterns))
        fi, s = divmod(rest, len(self.sigmas))
        return fi, s, p, d

    def descriptor(self, i: int) -> IndexedSetDescriptor:
        fi, s, p, d = self._split(i)
        return IndexedSetDescriptor(fi, self.sigmas[s], self.patterns[p], self.maps[d])

    def _engine_key(self, fi: int, d: int) -> object:
        # bijections inducing the same color map share one filtered host
        return fi, self.maps[d]

    def filtered_vertices(self, fi: int, d: int) -> List[int]:
        f = self.family.members[fi]
        colors = self.maps[d]
        return [v for v in range(self.graph.n) if self.coloring[v] == colors[f[v] - 1]]

    def _engine(self, fi: int, d: int) -> ColorfulCounter:
        key = self._engine_key(fi, d)
        engine = self._engines.get(key)
        if engine is None:
            engine = ColorfulCounter(self.graph, self.family.members[fi], allowed=self.filtered_vertices(fi, d))
            self._engines[key] = engine
        return engine

    def contains(self, i: int, v: Sequence[int]) -> bool:
        fi, s, p, d = self._split(i)
        if not self._base_contains(fi, s, p, v):
            return False
        f = self.family.members[fi]
        colors = self.maps[d]
        return all(self.coloring[x] == colors[f[x] - 1] for x in v)

    def first_index(self, v: Sequence[int]) -> Optional[int]:
        if len(v) != self.k or len(set(v)) != self.k:
            return None
        found = self._first_member(v)
        if found is None:
            return None
        p = self._first_pattern(v)
        if p is None:
            return None
        fi, sigma = found
        # the color map d must send f-color sigma[j] to c(v_j)
        wanted = [0] * self.k
        for x, color in zip(v, sigma):
            wanted[color - 1] = self.coloring[x]
        d = self.first_map.get(tuple(wanted))
        if d is None:
            return None
        base = (fi * len(self.sigmas) + self.sigma_rank[sigma]) * len(self.patterns) + p
        return base * len(self.maps) + d

    def multiplicity_bound(self) -> int:
        repeats = math.prod(math.factorial(count) for _, count in self.motif.counts)
        return len(self.family) * len(self.patterns) * repeats


# ============================================================================
# Construction
# ============================================================================

def build_set_system(graph: Graph, k: int, prop: Property, family: HashFamily) -> ColorCodedSetSystem:
    """
    One indexed set per (f, σ, H) for the property's edge-minimal patterns.

    Raises:
        NonMonotonePropertyError: the property is not monotone
        ResourceCapError: minimal patterns cannot be enumerated at this k
    """
    require_monotone(prop)
    return ColorCodedSetSystem(graph, k, minimal_patterns(prop, k), family)


def build_motif_set_system(graph: Graph, coloring: Coloring, motif: ColorMultiset,
                           prop: Property, family: HashFamily) -> MotifSetSystem:
    require_monotone(prop)
    return MotifSetSystem(graph, coloring, motif, minimal_patterns(prop, motif.size), family)


@dataclass(frozen=True)
class FamilyPlan:
    family: HashFamily
    delta_family: float
    delta_estimator: float


def resolve_family_mode(n: int, k: int, choice: FamilyChoice) -> str:
    if choice != "auto":
        return choice
    return "exact-greedy" if math.comb(n, k) <= config.HASH_EXACT_SUBSET_CAP else "randomized"


def plan_family(n: int, k: int, choice: FamilyChoice, delta: float, seed: int) -> FamilyPlan:
    """
    Build the hash family and split δ: a randomized family takes δ/2 for
    missing some k-subset and leaves δ/2 to the estimator; a certified family
    leaves all of δ to the estimator.
    """
    if not 1 <= k <= n:
        raise InstanceError(f"need 1 ≤ k ≤ n, got k={k}, n={n}")
    mode = resolve_family_mode(n, k, choice)
    if mode == "randomized":
        family = build_family(n, k, "randomized", delta / 2, seed)
        return FamilyPlan(family, delta / 2, delta / 2)
    return FamilyPlan(build_family(n, k, "exact-greedy", None, seed), 0.0, delta)


def with_provenance(estimate: Estimate, plan: FamilyPlan, delta: float) -> Estimate:
    return replace(
        estimate,
        delta=delta,
        family_mode=plan.family.mode,
        family_size=len(plan.family),
        delta_family=plan.delta_family,
        delta_estimator=plan.delta_estimator,
    )


# ============================================================================
# Entry points
# ============================================================================

def approx_count_labelled(graph: Graph, k: int, prop: Property, epsilon: float, delta: float, seed: int,
                          family_mode: FamilyChoice = "auto", workers: int = 1,
                         trial_rule: TrialRule = "sets") -> Estimate:
    """
    Estimate the number of tuples of k distinct vertices whose induced
    labelled graph satisfies the property.
    """
    require_monotone(prop)
    plan = plan_family(graph.n, k, family_mode, delta, seed)
    system = build_set_system(graph, k, prop, plan.family)
    estimate = estimate_union(system, epsilon, plan.delta_estimator, seed, workers, trial_rule)
    return with_provenance(estimate, plan, delta)


def approx_count_unlabelled(graph: Graph, k: int, prop: Property, epsilon: float, delta: float, seed: int,
                            family_mode: FamilyChoice = "auto", workers: int = 1,
                            trial_rule: TrialRule = "sets") -> Estimate:
    """Estimate the number of k-subsets; the labelled estimate divided by k!."""
    if not prop.symmetric:
        raise NonSymmetricPropertyError(f"property {prop.name!r} is not symmetric; count it labelled")
    labelled = approx_count_labelled(graph, k, prop, epsilon, delta, seed, family_mode, workers, trial_rule)
    return labelled.scaled(math.factorial(k))


def approx_count_colored(graph: Graph, coloring: Coloring, motif: ColorMultiset, prop: Property,
                         epsilon: float, delta: float, seed: int,
                         family_mode: FamilyChoice = "auto", workers: int = 1,
                         trial_rule: TrialRule = "sets") -> Estimate:
    """
    Estimate the number of k-tuples of distinct vertices, k = |M|, whose
    colors realize M and whose induced labelled graph satisfies the property.
    """
    require_monotone(prop)
    k = motif.size
    if k > graph.n:
        raise InstanceError(f"motif has {k} vertices but the graph only {graph.n}")
    if coloring.n != graph.n:
        raise ColoringError(f"coloring covers {coloring.n} vertices, graph has {graph.n}")
    plan = plan_family(graph.n, k, family_mode, delta, seed)
    system = build_motif_set_system(graph, coloring, motif, prop, plan.family)
    estimate = estimate_union(system, epsilon, plan.delta_estimator, seed, workers, trial_rule)
    return with_provenance(estimate, plan, delta)


def approx_count_motif(graph: Graph, coloring: Coloring, motif: ColorMultiset, epsilon: float, delta: float,
                       seed: int, family_mode: FamilyChoice = "auto", workers: int = 1,
                       trial_rule: TrialRule = "sets") -> Estimate:
    """Estimate the number of connected induced subgraphs whose colors are exactly M."""
    labelled = approx_count_colored(graph, coloring, motif, CONNECTED, epsilon, delta, seed, family_mode,
                                    workers, trial_rule)
    return labelled.scaled(math.factorial(motif.size))


def union_by_exhaustion(system: ColorCodedSetSystem) -> int:
    """|∪ sets| by testing every tuple of k distinct host vertices."""
    return sum(
        1
        for v in itertools.permutations(range(system.graph.n), system.k)
        if system.first_index(v) is not None
    )


def union_by_membership(system: ColorCodedSetSystem) -> int:
    """
    |∪ sets| by asking `contains` of every set that could hold each tuple:
    for every family member f, the sets with σ = f(v), over all patterns
    (and color maps, for motif systems).
    """
    per_coloring = system.m // (len(system.family) * len(system.sigmas))
    found = 0
    for v in itertools.permutations(range(system.graph.n), system.k):
        for fi, f in enumerate(system.family.members):
            s = system.sigma_rank.get(tuple(f[x] for x in v))
            if s is None:
                continue
            start = (fi * len(system.sigmas) + s) * per_coloring
            if any(system.contains(i, v) for i in range(start, start + per_coloring)):
                found += 1
                break
    return found
