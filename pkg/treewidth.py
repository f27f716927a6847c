"""
Exact Treewidth for Patterns

Tree decompositions of k-vertex labelled patterns (never of the host graph).
The width is exact: a dynamic program over vertex subsets finds an optimal
elimination order, the order is turned into bags, and redundant bags are
merged away. Ties between minimum-width decompositions go to fewer bags,
then to the smaller sorted bag list. `make_nice` rewrites a decomposition
into leaf / introduce / forget / join nodes for the colorful counting DP.

Vertices are pattern labels 1..k.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Literal, Optional, Sequence, Tuple, Union

import config
from errors import InvalidDecompositionError, ResourceCapError
from graphs import component_mask, iter_bits
from properties import LabelledPattern


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted tree of bags: node id → bag, node id → parent id (None at the root)."""
    bags: Dict[int, FrozenSet[int]]
    parent: Dict[int, Optional[int]]

    @property
    def nodes(self) -> List[int]:
        return sorted(self.bags)

    @property
    def root(self) -> int:
        roots = [t for t, p in self.parent.items() if p is None]
        if len(roots) != 1:
            raise InvalidDecompositionError(f"expected one root, found {len(roots)}")
        return roots[0]

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags.values()), default=0) - 1

    def children(self, node: int) -> List[int]:
        return sorted(t for t, p in self.parent.items() if p == node)

    def to_json(self) -> str:
        return json.dumps(
            [
                {"node": t, "bag": sorted(self.bags[t]), "parent": self.parent[t]}
                for t in self.nodes
            ]
        )


NodeKind = Literal["leaf", "introduce", "forget", "join"]


@dataclass(frozen=True)
class NiceNode:
    kind: NodeKind
    bag: Tuple[int, ...]
    children: Tuple[int, ...] = ()
    vertex: Optional[int] = None


@dataclass(frozen=True)
class NiceDecomposition:
    """Nice decomposition stored as a node list; children precede their parents."""
    nodes: Tuple[NiceNode, ...]
    root: int

    @property
    def bags(self) -> Dict[int, FrozenSet[int]]:
        return {i: frozenset(node.bag) for i, node in enumerate(self.nodes)}

    @property
    def parent(self) -> Dict[int, Optional[int]]:
        parent: Dict[int, Optional[int]] = {i: None for i in range(len(self.nodes))}
        for i, node in enumerate(self.nodes):
            for child in node.children:
                parent[child] = i
        return parent

    @property
    def width(self) -> int:
        return max(len(node.bag) for node in self.nodes) - 1

    def to_json(self) -> str:
        return json.dumps(
            [
                {"node": i, "type": node.kind, "bag": list(node.bag), "children": list(node.children)}
                for i, node in enumerate(self.nodes)
            ]
        )


AnyDecomposition = Union[TreeDecomposition, NiceDecomposition]


# ============================================================================
# Elimination orders
# ============================================================================

def _outer_neighbors(rows: Sequence[int], eliminated: int, v: int) -> int:
    """
    Vertices outside eliminated ∪ {v} reachable from v through eliminated
    vertices: v's neighborhood in the fill graph at the moment v is removed.
    """
    reach = component_mask(rows, v, eliminated | 1 << v)
    grown = 0
    for u in iter_bits(reach):
        grown |= rows[u]
    return grown & ~(eliminated | 1 << v)


def _check_cap(k: int) -> None:
    if k > config.TREEWIDTH_MAX_K:
        raise ResourceCapError("pattern size k for exact treewidth", k, config.TREEWIDTH_MAX_K,
                               "SUBCOUNT_TREEWIDTH_MAX_K")


def elimination_order_width(pattern: LabelledPattern, order: Sequence[int]) -> int:
    """Width of the decomposition induced by eliminating labels in `order`."""
    rows = pattern.rows
    eliminated = 0
    width = 0
    for label in order:
        v = label - 1
        width = max(width, bin(_outer_neighbors(rows, eliminated, v)).count("1"))
        eliminated |= 1 << v
    return width


def optimal_elimination_order(pattern: LabelledPattern) -> Tuple[int, List[int]]:
    """
    Minimum-width elimination order by DP over vertex subsets.

    TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v)
    is the fill-graph neighborhood of v after eliminating S. Ties go to the
    smallest label.

    Returns:
        (treewidth, order as labels, first eliminated first)
    """
    k = pattern.k
    _check_cap(k)
    rows = pattern.rows
    full = (1 << k) - 1
    best = [0] * (full + 1)
    last = [0] * (full + 1)
    best[0] = -1
    for subset in range(1, full + 1):
        value = None
        for v in iter_bits(subset):
            rest = subset ^ (1 << v)
            cost = max(best[rest], bin(_outer_neighbors(rows, rest, v)).count("1"))
            if value is None or cost < value:
                value, last[subset] = cost, v
        best[subset] = value

    order = []
    subset = full
    while subset:
        v = last[subset]
        order.append(v + 1)
        subset ^= 1 << v
    order.reverse()
    return max(best[full], 0), order


def treewidth(pattern: LabelledPattern) -> int:
    return optimal_elimination_order(pattern)[0]


def elimination_orders_of_width(pattern: LabelledPattern, width: int) -> Iterator[List[int]]:
    """Every elimination order of at most the given width, label-lexicographically."""
    k = pattern.k
    _check_cap(k)
    rows = pattern.rows
    full = (1 << k) - 1

    def fits(eliminated: int, v: int) -> bool:
        return bin(_outer_neighbors(rows, eliminated, v)).count("1") <= width

    @lru_cache(maxsize=None)
    def completes(eliminated: int) -> bool:
        if eliminated == full:
            return True
        return any(
            fits(eliminated, v) and completes(eliminated | 1 << v)
            for v in range(k) if not eliminated >> v & 1
        )

    def walk(eliminated: int, order: List[int]) -> Iterator[List[int]]:
        if eliminated == full:
            yield list(order)
            return
        for v in range(k):
            if eliminated >> v & 1 or not fits(eliminated, v) or not completes(eliminated | 1 << v):
                continue
            order.append(v + 1)
            yield from walk(eliminated | 1 << v, order)
            order.pop()

    return walk(0, [])


# ============================================================================
# Decompositions
# ============================================================================

def _from_elimination_order(pattern: LabelledPattern, order: Sequence[int]) -> TreeDecomposition:
    rows = pattern.rows
    position = {label: i for i, label in enumerate(order)}
    bags: Dict[int, FrozenSet[int]] = {}
    parent: Dict[int, Optional[int]] = {}
    eliminated = 0
    for i, label in enumerate(order):
        later = _outer_neighbors(rows, eliminated, label - 1)
        higher = [u + 1 for u in iter_bits(later)]
        bags[i] = frozenset([label, *higher])
        parent[i] = min(position[u] for u in higher) if higher else None
        eliminated |= 1 << (label - 1)

    # one tree per component; hang every other root below the last one
    roots = [i for i, p in parent.items() if p is None]
    for r in roots[:-1]:
        parent[r] = roots[-1]
    return TreeDecomposition(bags=bags, parent=parent)


def _merge_redundant(td: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges whose child or parent bag is contained in the other."""
    bags = dict(td.bags)
    parent = dict(td.parent)
    changed = True
    while changed:
        changed = False
        for child in sorted(bags):
            up = parent[child]
            if up is None:
                continue
            if bags[child] <= bags[up] or bags[up] <= bags[child]:
                if bags[up] <= bags[child]:
                    bags[up] = bags[child]
                for t, p in parent.items():
                    if p == child:
                        parent[t] = up
                del bags[child]
                del parent[child]
                changed = True
                break

    renumber = {old: new for new, old in enumerate(sorted(bags))}
    return TreeDecomposition(
        bags={renumber[t]: bag for t, bag in bags.items()},
        parent={renumber[t]: (renumber[p] if p is not None else None) for t, p in parent.items()},
    )


@lru_cache(maxsize=None)
def tree_decomposition(pattern: LabelledPattern) -> TreeDecomposition:
    """
    A minimum-width tree decomposition of the pattern.

    Among minimum-width elimination orders (up to config.TREEWIDTH_TIE_ORDERS
    of them) the merged decomposition with the fewest bags wins, then the
    lexicographically smallest sorted bag list.

    Raises:
        ResourceCapError: k above the configured cap
    """
    width, _ = optimal_elimination_order(pattern)
    # a forest's bags are its edges and isolated labels whatever the order
    limit = 1 if width <= 1 else max(1, config.TREEWIDTH_TIE_ORDERS)
    best: Optional[Tuple[Tuple[int, List[List[int]]], TreeDecomposition]] = None
    for order in itertools.islice(elimination_orders_of_width(pattern, width), limit):
        td = _merge_redundant(_from_elimination_order(pattern, order))
        key = (len(td.bags), sorted(sorted(bag) for bag in td.bags.values()))
        if best is None or key < best[0]:
            best = (key, td)
    return best[1]


def validate(pattern: LabelledPattern, td: AnyDecomposition) -> bool:
    """True iff td is a tree whose bags cover all vertices and edges with connected occurrences."""
    bags = td.bags
    parent = td.parent
    if not bags or set(bags) != set(parent):
        return False

    roots = [t for t, p in parent.items() if p is None]
    if len(roots) != 1:
        return False
    for t in bags:
        seen = set()
        while t is not None:
            if t in seen or t not in parent:
                return False
            seen.add(t)
            t = parent[t]

    labels = set(range(1, pattern.k + 1))
    if set().union(*bags.values()) != labels:
        return False
    for a, b in pattern.edges:
        if not any(a in bag and b in bag for bag in bags.values()):
            return False
    for label in labels:
        holding = {t for t, bag in bags.items() if label in bag}
        # a connected subtree has exactly one node whose parent is outside it
        tops = [t for t in holding if parent[t] not in holding]
        if len(tops) != 1:
            return False
    return True


# ============================================================================
# Nice decompositions
# ============================================================================

class _NiceBuilder:
    def __init__(self):
        self.nodes: List[NiceNode] = []

    def add(self, kind: NodeKind, bag: Sequence[int], children: Sequence[int] = (), vertex: Optional[int] = None) -> int:
        self.nodes.append(NiceNode(kind, tuple(sorted(bag)), tuple(children), vertex))
        return len(self.nodes) - 1

    def transition(self, node: int, target: FrozenSet[int]) -> int:
        """Forget then introduce vertices until the bag of `node` equals target."""
        bag = set(self.nodes[node].bag)
        for v in sorted(bag - target):
            bag.discard(v)
            node = self.add("forget", bag, [node], v)
        for v in sorted(target - bag):
            bag.add(v)
            node = self.add("introduce", bag, [node], v)
        return node


def make_nice(td: TreeDecomposition, pattern: Optional[LabelledPattern] = None) -> NiceDecomposition:
    """
    Rewrite a decomposition into nice form with an empty leaf under every
    branch and an empty root bag.

    Raises:
        InvalidDecompositionError: the input is not a valid decomposition of `pattern`
    """
    if pattern is not None and not validate(pattern, td):
        raise InvalidDecompositionError("input is not a valid tree decomposition of the pattern")
    builder = _NiceBuilder()

    def build(t: int) -> int:
        bag = td.bags[t]
        branches = [builder.transition(build(c), bag) for c in td.children(t)]
        if not branches:
            return builder.transition(builder.add("leaf", ()), bag)
        node = branches[0]
        for other in branches[1:]:
            node = builder.add("join", bag, [node, other])
        return node

    top = build(td.root)
    root = builder.transition(top, frozenset())
    return NiceDecomposition(nodes=tuple(builder.nodes), root=root)


def is_nice(nice: NiceDecomposition) -> bool:
    """Structural check of node kinds against their children's bags."""
    for node in nice.nodes:
        bag = set(node.bag)
        kids = [set(nice.nodes[c].bag) for c in node.children]
        if node.kind == "leaf":
            ok = not kids and not bag
        elif node.kind == "introduce":
            ok = len(kids) == 1 and node.vertex in bag and kids[0] == bag - {node.vertex}
        elif node.kind == "forget":
            ok = len(kids) == 1 and node.vertex not in bag and kids[0] == bag | {node.vertex}
        else:
            ok = len(kids) == 2 and kids[0] == bag and kids[1] == bag
        if not ok:
            return False
    return not nice.nodes[nice.root].bag


@lru_cache(maxsize=None)
def nice_decomposition(pattern: LabelledPattern) -> NiceDecomposition:
    return make_nice(tree_decomposition(pattern))


def exhaustive_treewidth(pattern: LabelledPattern) -> int:
    """Minimum width over every elimination order (k! orders; small k only)."""
    return min(
        elimination_order_width(pattern, order)
        for order in itertools.permutations(range(1, pattern.k + 1))
    )
