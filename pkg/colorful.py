"""
Colorful Counting and Sampling

Counts, enumerates and uniformly samples the colour-preserving copies of a
colorful pattern in a vertex-colored host graph. The dynamic program runs
over a nice tree decomposition of the pattern: a table at node t maps an
assignment of host vertices to the bag (each bag vertex u gets a host vertex
of color ω(u)) to the number of ways to extend it to everything forgotten
below t. Sampling walks the same tables top-down, choosing each forgotten
vertex with probability proportional to its table weight, which makes every
witness equally likely.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from errors import ColoringError, NoWitnessError
from graphs import Coloring, Graph
from properties import LabelledPattern
from treewidth import NiceDecomposition, nice_decomposition

Embedding = Dict[int, int]
Table = Dict[Tuple[int, ...], int]


@dataclass(frozen=True)
class ColoredPattern:
    """A labelled pattern whose label i carries color omega[i-1]; colors pairwise distinct."""
    pattern: LabelledPattern
    omega: Tuple[int, ...]

    def __post_init__(self):
        if len(self.omega) != self.pattern.k:
            raise ColoringError(f"pattern has {self.pattern.k} labels but {len(self.omega)} colors")
        if len(set(self.omega)) != len(self.omega):
            raise ColoringError("pattern coloring must be injective")

    @classmethod
    def identity(cls, pattern: LabelledPattern) -> "ColoredPattern":
        """Label i gets color i."""
        return cls(pattern, tuple(range(1, pattern.k + 1)))

    def color(self, label: int) -> int:
        return self.omega[label - 1]


class ColorfulCounter:
    """
    Colorful DP engine for one host graph and coloring.

    Color classes are indexed once and shared by every pattern counted
    against this (G, f). DP tables are kept per pattern so that sampling can
    reuse them.

    Args:
        graph: host graph
        coloring: vertex coloring of the host
        allowed: optional vertex subset; classes keep only these vertices,
            which is counting in the induced subgraph on them
    """

    def __init__(self, graph: Graph, coloring: Coloring | Sequence[int], allowed: Optional[Iterable[int]] = None):
        colors = coloring.colors if isinstance(coloring, Coloring) else tuple(coloring)
        if len(colors) != graph.n:
            raise ColoringError(f"coloring covers {len(colors)} vertices, graph has {graph.n}")
        self.graph = graph
        keep = set(allowed) if allowed is not None else None
        classes: Dict[int, List[int]] = {}
        for v, color in enumerate(colors):
            if keep is None or v in keep:
                classes.setdefault(color, []).append(v)
        self.classes: Dict[int, Tuple[int, ...]] = {c: tuple(vs) for c, vs in classes.items()}
        self._tables: Dict[ColoredPattern, Tuple[NiceDecomposition, List[Table]]] = {}

    # ------------------------------------------------------------------
    # Counting
    # ------------------------------------------------------------------

    def _run(self, cp: ColoredPattern) -> Tuple[NiceDecomposition, List[Table]]:
        cached = self._tables.get(cp)
        if cached is not None:
            return cached

        nice = nice_decomposition(cp.pattern)
        rows = self.graph.rows
        adjacency = {label: cp.pattern.neighbors(label) for label in range(1, cp.pattern.k + 1)}
        tables: List[Table] = []

        for node in nice.nodes:
            if node.kind == "leaf":
                table: Table = {(): 1}
            elif node.kind == "introduce":
                v = node.vertex
                pos = node.bag.index(v)
                child = tables[node.children[0]]
                candidates = self.classes.get(cp.color(v), ())
                checks = [i for i, u in enumerate(node.bag) if u in adjacency[v]]
                table = {}
                for assign, count in child.items():
                    for x in candidates:
                        key = assign[:pos] + (x,) + assign[pos:]
                        row = rows[x]
                        if all(row >> key[i] & 1 for i in checks):
                            table[key] = count
            elif node.kind == "forget":
                child_node = nice.nodes[node.children[0]]
                pos = child_node.bag.index(node.vertex)
                table = {}
                for assign, count in tables[node.children[0]].items():
                    key = assign[:pos] + assign[pos + 1:]
                    table[key] = table.get(key, 0) + count
            else:
                left = tables[node.children[0]]
                right = tables[node.children[1]]
                if len(left) > len(right):
                    left, right = right, left
                table = {a: c * right[a] for a, c in left.items() if a in right}
            tables.append(table)

        self._tables[cp] = (nice, tables)
        return nice, tables

    def count(self, cp: ColoredPattern) -> int:
        """Number of colour-preserving copies of the pattern (one embedding each)."""
        if any(color not in self.classes for color in cp.omega):
            return 0
        nice, tables = self._run(cp)
        return tables[nice.root].get((), 0)

    # ------------------------------------------------------------------
    # Sampling and enumeration
    # ------------------------------------------------------------------

    def sample(self, cp: ColoredPattern, rng: random.Random) -> Embedding:
        """
        Uniformly random embedding (label → host vertex).

        Raises:
            NoWitnessError: the pattern has no colour-preserving copy
        """
        total = self.count(cp)
        if total == 0:
            raise NoWitnessError("no colour-preserving copy of the pattern exists")
        nice, tables = self._run(cp)

        embedding: Embedding = {}
        stack = [nice.root]
        while stack:
            index = stack.pop()
            node = nice.nodes[index]
            if node.kind == "forget":
                child_index = node.children[0]
                child_node = nice.nodes[child_index]
                pos = child_node.bag.index(node.vertex)
                assign = tuple(embedding[u] for u in node.bag)
                weight = tables[index][assign]
                pick = rng.randrange(weight)
                child_table = tables[child_index]
                for x in self.classes[cp.color(node.vertex)]:
                    pick -= child_table.get(assign[:pos] + (x,) + assign[pos:], 0)
                    if pick < 0:
                        embedding[node.vertex] = x
                        break
            stack.extend(node.children)
        return embedding

    def enumerate(self, cp: ColoredPattern) -> Iterator[Embedding]:
        """All embeddings, in a deterministic order."""
        if self.count(cp) == 0:
            return
        nice, tables = self._run(cp)

        def expand(index: int, fixed: Embedding) -> List[Embedding]:
            node = nice.nodes[index]
            if node.kind == "leaf":
                return [{}]
            if node.kind == "introduce":
                return expand(node.children[0], fixed)
            if node.kind == "join":
                left = expand(node.children[0], fixed)
                right = expand(node.children[1], fixed)
                return [{**a, **b} for a, b in product(left, right)]
            child_index = node.children[0]
            child_node = nice.nodes[child_index]
            pos = child_node.bag.index(node.vertex)
            assign = tuple(fixed[u] for u in node.bag)
            out = []
            for x in self.classes[cp.color(node.vertex)]:
                key = assign[:pos] + (x,) + assign[pos:]
                if tables[child_index].get(key, 0):
                    below = expand(child_index, {**fixed, node.vertex: x})
                    out.extend({node.vertex: x, **rest} for rest in below)
            return out

        yield from expand(nice.root, {})


def count_colorful(graph: Graph, coloring: Coloring, cp: ColoredPattern) -> int:
    return ColorfulCounter(graph, coloring).count(cp)


def sample_colorful(graph: Graph, coloring: Coloring, cp: ColoredPattern, rng: random.Random) -> Embedding:
    return ColorfulCounter(graph, coloring).sample(cp, rng)


def enumerate_colorful(graph: Graph, coloring: Coloring, cp: ColoredPattern) -> List[Embedding]:
    return list(ColorfulCounter(graph, coloring).enumerate(cp))


def is_valid_embedding(graph: Graph, coloring: Coloring, cp: ColoredPattern, embedding: Embedding) -> bool:
    """Colour-preserving, edge-preserving and injective."""
    labels = range(1, cp.pattern.k + 1)
    if set(embedding) != set(labels):
        return False
    if len(set(embedding.values())) != len(embedding):
        return False
    if any(coloring[embedding[i]] != cp.color(i) for i in labels):
        return False
    return all(graph.has_edge(embedding[a], embedding[b]) for a, b in cp.pattern.edges)
