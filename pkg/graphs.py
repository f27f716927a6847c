"""
Graph Core

Immutable host graphs and vertex colorings, induced subgraphs, connectivity,
the edge-list / coloring file formats and a seeded random-instance generator.

Vertices are dense integers 0..n-1. Adjacency is kept twice: as neighbor
sets and as one packed bit row per vertex (a Python int), so edge queries
and subset connectivity run on bit operations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from errors import (
    ColoringError,
    DuplicateEdgeError,
    EdgeCountMismatchError,
    GraphError,
    MalformedHeaderError,
    MalformedLineError,
    ParseError,
    SelfLoopError,
    VertexOutOfRangeError,
)

Edge = Tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of `mask`, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def component_mask(rows: Sequence[int], start: int, allowed: int) -> int:
    """
    Vertices reachable from `start` inside the vertex set `allowed`.

    Args:
        rows: packed adjacency rows
        start: start vertex (must be in `allowed`)
        allowed: bitmask of usable vertices

    Returns:
        Bitmask of the connected component of `start` in G[allowed]
    """
    reached = 1 << start
    frontier = reached
    while frontier:
        grown = 0
        for v in iter_bits(frontier):
            grown |= rows[v]
        frontier = grown & allowed & ~reached
        reached |= frontier
    return reached


def mask_is_connected(rows: Sequence[int], mask: int) -> bool:
    """True iff G[mask] is connected; the empty set counts as connected."""
    if mask == 0:
        return True
    start = (mask & -mask).bit_length() - 1
    return component_mask(rows, start, mask) == mask


# ============================================================================
# Graph
# ============================================================================

@dataclass(frozen=True)
class Graph:
    """
    Undirected simple graph on vertices 0..n-1.

    Build instances through `Graph.from_edges`, which normalizes edges to
    (u, v) with u < v and fills the adjacency views.
    """
    n: int
    edges: FrozenSet[Edge]
    adjacency: Tuple[FrozenSet[int], ...] = field(repr=False, compare=False)
    rows: Tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        normalized = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            normalized.add((u, v) if u < v else (v, u))

        neighbors: List[set] = [set() for _ in range(n)]
        rows = [0] * n
        for u, v in normalized:
            neighbors[u].add(v)
            neighbors[v].add(u)
            rows[u] |= 1 << v
            rows[v] |= 1 << u

        return cls(
            n=n,
            edges=frozenset(normalized),
            adjacency=tuple(frozenset(s) for s in neighbors),
            rows=tuple(rows),
        )

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, [])

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def relabel(self, permutation: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed to permutation[v]."""
        return Graph.from_edges(self.n, ((permutation[u], permutation[v]) for u, v in self.edges))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """Import a networkx graph whose nodes are 0..n-1 (relabelled otherwise)."""
        nodes = sorted(g.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in g.edges()))


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Graph:
    """
    Subgraph induced by `vertices`, relabelled 0..|U|-1 in ascending order.

    Raises:
        GraphError: if some vertex is not in the graph
    """
    chosen = sorted(set(vertices))
    for v in chosen:
        if not 0 <= v < graph.n:
            raise GraphError(f"vertex {v} is not in a graph on {graph.n} vertices")
    position = {v: i for i, v in enumerate(chosen)}
    edges = [
        (position[u], position[v])
        for u, v in graph.edges
        if u in position and v in position
    ]
    return Graph.from_edges(len(chosen), edges)


def is_connected(graph: Graph) -> bool:
    """True iff every vertex pair is joined by a path (0 and 1 vertices count as connected)."""
    return mask_is_connected(graph.rows, graph.full_mask)


def is_connected_subset(graph: Graph, vertices: Iterable[int]) -> bool:
    """True iff G[vertices] is connected, without building the subgraph."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask_is_connected(graph.rows, mask)


def complement(graph: Graph) -> Graph:
    edges = [
        (u, v)
        for u in range(graph.n)
        for v in range(u + 1, graph.n)
        if not graph.has_edge(u, v)
    ]
    return Graph.from_edges(graph.n, edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    """
    Seeded G(n, p) sample.

    Args:
        n: vertex count
        p: edge probability in [0, 1]
        seed: generator seed; equal seeds give equal graphs

    Returns:
        Graph on n vertices
    """
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


# ============================================================================
# Colorings
# ============================================================================

@dataclass(frozen=True)
class Coloring:
    """
    Vertex coloring: colors[v] is the color id of vertex v.

    `names` optionally maps color ids back to the tokens used in a coloring
    file (e.g. "red"), so motif specs can refer to colors by name.
    """
    colors: Tuple[int, ...]
    names: Tuple[Tuple[int, str], ...] = ()

    @classmethod
    def of(cls, colors: Iterable[int]) -> "Coloring":
        return cls(colors=tuple(colors))

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def palette(self) -> FrozenSet[int]:
        return frozenset(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def name_of(self, color: int) -> str:
        return dict(self.names).get(color, str(color))

    def color_id(self, token: str) -> Optional[int]:
        """Color id for a name or a decimal id; None if no vertex has it."""
        for color, name in self.names:
            if name == token:
                return color
        try:
            color = int(token)
        except ValueError:
            return None
        return color if color in self.palette else None

    def classes(self) -> Dict[int, Tuple[int, ...]]:
        """Color → ascending tuple of vertices with that color."""
        buckets: Dict[int, List[int]] = {}
        for v, color in enumerate(self.colors):
            buckets.setdefault(color, []).append(v)
        return {color: tuple(vs) for color, vs in buckets.items()}

    def restrict(self, vertices: Iterable[int]) -> "Coloring":
        """Coloring of the induced subgraph on `vertices` (ascending relabel)."""
        return Coloring(tuple(self.colors[v] for v in sorted(set(vertices))), self.names)

    def relabel(self, permutation: Sequence[int]) -> "Coloring":
        colors = [0] * self.n
        for v, color in enumerate(self.colors):
            colors[permutation[v]] = color
        return Coloring(tuple(colors), self.names)

    def check_covers(self, graph: Graph) -> None:
        if self.n != graph.n:
            raise ColoringError(f"coloring has {self.n} vertices, graph has {graph.n}")


def is_colorful(coloring: Coloring, vertices: Sequence[int]) -> bool:
    """True iff the vertices receive pairwise distinct colors."""
    return len({coloring[v] for v in vertices}) == len(vertices)


def random_coloring(n: int, k: int, seed: int) -> Coloring:
    """Uniform coloring of n vertices with colors 1..k."""
    rng = random.Random(seed)
    return Coloring.of(rng.randint(1, k) for _ in range(n))


@dataclass(frozen=True)
class ColorMultiset:
    """A motif: color → multiplicity, stored as sorted (color, count) pairs."""
    counts: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        for color, count in self.counts:
            if count < 1:
                raise ColoringError(f"multiplicity of color {color} must be positive, got {count}")

    @classmethod
    def from_counts(cls, counts: Dict[int, int]) -> "ColorMultiset":
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def from_colors(cls, colors: Iterable[int]) -> "ColorMultiset":
        counts: Dict[int, int] = {}
        for color in colors:
            counts[color] = counts.get(color, 0) + 1
        return cls.from_counts(counts)

    @classmethod
    def parse(cls, spec: str, coloring: Coloring) -> "ColorMultiset":
        """
        Parse a motif spec "color:mult,color:mult,...".

        Colors are resolved through the coloring's names. A color no vertex
        carries gets a fresh id outside the palette, so it simply matches
        nothing.
        """
        counts: Dict[int, int] = {}
        fresh = max(coloring.palette, default=0) + 1
        for item in spec.split(","):
            item = item.strip()
            if not item:
                continue
            token, sep, mult = item.rpartition(":")
            if not sep or not token:
                raise ParseError(1, f"motif entry {item!r} is not 'color:multiplicity'")
            try:
                multiplicity = int(mult)
            except ValueError:
                raise ParseError(1, f"multiplicity {mult!r} is not an integer")
            if multiplicity < 1:
                raise ParseError(1, f"multiplicity of {token!r} must be positive")
            color = coloring.color_id(token)
            if color is None:
                color = fresh
                fresh += 1
            counts[color] = counts.get(color, 0) + multiplicity
        if not counts:
            raise ParseError(1, "empty motif")
        return cls.from_counts(counts)

    @property
    def size(self) -> int:
        return sum(count for _, count in self.counts)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.counts)

    def as_list(self) -> List[int]:
        """Colors with multiplicity, ascending."""
        return [color for color, count in self.counts for _ in range(count)]


# ============================================================================
# File formats
# ============================================================================

def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((line_no, stripped.split()))
    return lines


def _int_pair(line_no: int, tokens: List[str], error: type) -> Tuple[int, int]:
    if len(tokens) != 2:
        raise error(line_no, f"expected two integers, found {' '.join(tokens)!r}")
    try:
        return int(tokens[0]), int(tokens[1])
    except ValueError:
        raise error(line_no, f"expected two integers, found {' '.join(tokens)!r}")


def load_graph(text: str) -> Graph:
    """
    Parse the edge-list format: header "n m", then m lines "u v" with u < v.

    Lines starting with '#' are comments.

    Raises:
        MalformedHeaderError, MalformedLineError, VertexOutOfRangeError,
        DuplicateEdgeError, SelfLoopError, EdgeCountMismatchError
    """
    lines = _content_lines(text)
    if not lines:
        raise MalformedHeaderError(1, "missing 'n m' header")
    header_no, header = lines[0]
    n, m = _int_pair(header_no, header, MalformedHeaderError)
    if n < 0 or m < 0:
        raise MalformedHeaderError(header_no, "vertex and edge counts must be non-negative")

    seen = set()
    for line_no, tokens in lines[1:]:
        u, v = _int_pair(line_no, tokens, MalformedLineError)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRangeError(line_no, f"vertex index out of range 0..{n - 1} in edge {u} {v}")
        if u == v:
            raise SelfLoopError(line_no, f"self-loop at vertex {u}")
        if u > v:
            raise MalformedLineError(line_no, f"edge {u} {v} must list the smaller endpoint first")
        edge = (u, v)
        if edge in seen:
            raise DuplicateEdgeError(line_no, f"duplicate edge {edge[0]} {edge[1]}")
        seen.add(edge)

    if len(seen) != m:
        raise EdgeCountMismatchError(header_no, f"header declares {m} edges, found {len(seen)}")
    return Graph.from_edges(n, seen)


def dump_graph(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.sorted_edges())
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as f:
        return load_graph(f.read())


def load_coloring(text: str, n: int) -> Coloring:
    """
    Parse a coloring document: one "vertex color" line per vertex.

    Integer color tokens are used as color ids directly. Named colors
    ("red", "blue") get ids 1, 2, ... in sorted name order and keep their
    names for motif specs.
    """
    assigned: Dict[int, str] = {}
    for line_no, tokens in _content_lines(text):
        if len(tokens) != 2:
            raise MalformedLineError(line_no, f"expected 'vertex color', found {' '.join(tokens)!r}")
        try:
            v = int(tokens[0])
        except ValueError:
            raise MalformedLineError(line_no, f"vertex {tokens[0]!r} is not an integer")
        if not 0 <= v < n:
            raise VertexOutOfRangeError(line_no, f"vertex index {v} out of range 0..{n - 1}")
        if v in assigned:
            raise ParseError(line_no, f"vertex {v} colored twice")
        assigned[v] = tokens[1]

    missing = [v for v in range(n) if v not in assigned]
    if missing:
        raise ColoringError(f"vertices without a color: {missing[:10]}")

    tokens = [assigned[v] for v in range(n)]
    if all(_is_int(t) for t in tokens):
        return Coloring.of(int(t) for t in tokens)

    ids = {name: i for i, name in enumerate(sorted(set(tokens)), start=1)}
    return Coloring(
        colors=tuple(ids[t] for t in tokens),
        names=tuple((i, name) for name, i in sorted(ids.items(), key=lambda item: item[1])),
    )


def _is_int(token: str) -> bool:
    try:
        int(token)
    except ValueError:
        return False
    return True


def dump_coloring(coloring: Coloring) -> str:
    return "".join(f"{v} {coloring.name_of(color)}\n" for v, color in enumerate(coloring.colors))


def read_coloring(path: str, n: int) -> Coloring:
    with open(path, "r", encoding="utf-8") as f:
        return load_coloring(f.read(), n)
