"""
Partition Lattice

Partitions of {1..k} ordered by refinement: P ≤ Q iff Q refines P, so the
one-block partition 0̂ = {{1..k}} is the bottom and the all-singletons
partition 1̂ is the top. The meet of P and Q is the finest partition both
refine; its blocks are the connected components of the union of the two
block relations. μ(0̂, P) = (-1)^r r! with r = #blocks - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import bell
from sympy.utilities.iterables import multiset_partitions

import config
from errors import PatternError, ResourceCapError
from utils.sympy_linear import integer_determinant


@dataclass(frozen=True, order=True)
class Partition:
    """Blocks sorted by minimum element, elements ascending inside each block."""
    k: int
    blocks: Tuple[Tuple[int, ...], ...]

    @classmethod
    def of(cls, k: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        canonical = tuple(sorted((tuple(sorted(b)) for b in blocks if b), key=lambda b: b[0]))
        seen = [x for b in canonical for x in b]
        if sorted(seen) != list(range(1, k + 1)):
            raise PatternError(f"blocks {canonical} do not partition 1..{k}")
        return cls(k, canonical)

    @classmethod
    def bottom(cls, k: int) -> "Partition":
        return cls(k, (tuple(range(1, k + 1)),))

    @classmethod
    def top(cls, k: int) -> "Partition":
        return cls(k, tuple((i,) for i in range(1, k + 1)))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        """labels[i-1] names the block of element i."""
        groups: Dict[int, List[int]] = {}
        for i, label in enumerate(labels, start=1):
            groups.setdefault(label, []).append(i)
        return cls.of(len(labels), groups.values())

    @property
    def rank(self) -> int:
        return len(self.blocks) - 1

    def block_of(self) -> Dict[int, int]:
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def refines(self, other: "Partition") -> bool:
        """Every block of self lies inside a block of other."""
        _same_k(self, other)
        where = other.block_of()
        return all(len({where[x] for x in b}) == 1 for b in self.blocks)

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


def _same_k(p: Partition, q: Partition) -> None:
    if p.k != q.k:
        raise PatternError(f"partitions of {p.k} and {q.k} elements are not comparable")


def leq(p: Partition, q: Partition) -> bool:
    """P ≤ Q iff Q refines P."""
    return q.refines(p)


def meet(p: Partition, q: Partition) -> Partition:
    """Finest partition refined by both: merge blocks that share an element."""
    _same_k(p, q)
    parent = list(range(p.k + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in p.blocks + q.blocks:
        root = find(block[0])
        for x in block[1:]:
            parent[find(x)] = root
    return Partition.from_labels([find(i) for i in range(1, p.k + 1)])


def mobius_bottom(p: Partition) -> int:
    """μ(0̂, P) = (-1)^r r!."""
    return (-1) ** p.rank * math.factorial(p.rank)


def indicator(p: Partition) -> int:
    """1 on the bottom partition {{1..k}}, 0 elsewhere."""
    return 1 if len(p.blocks) == 1 else 0


# ============================================================================
# Lattice tables
# ============================================================================

@dataclass
class LatticeTable:
    """
    All partitions of {1..k}, 0̂ first and 1̂ last, the rest by (rank, blocks).

    Meets are memoized on demand; B_8² pairs would be wasteful to fill eagerly.
    """
    k: int
    partitions: List[Partition]
    mobius: List[int]
    index: Dict[Partition, int] = field(repr=False)
    _meets: Dict[Tuple[int, int], int] = field(default_factory=dict, repr=False)

    @property
    def bell(self) -> int:
        return len(self.partitions)

    def meet_index(self, i: int, j: int) -> int:
        key = (i, j) if i <= j else (j, i)
        found = self._meets.get(key)
        if found is None:
            found = self.index[meet(self.partitions[i], self.partitions[j])]
            self._meets[key] = found
        return found


@lru_cache(maxsize=None)
def partitions(k: int) -> LatticeTable:
    """
    The partition lattice on {1..k}.

    Raises:
        ResourceCapError: k above the configured cap
    """
    if k < 1:
        raise PatternError("k must be at least 1")
    if k > config.LATTICE_MAX_K:
        raise ResourceCapError("k for the partition lattice", k, config.LATTICE_MAX_K, "SUBCOUNT_LATTICE_MAX_K")

    found = [Partition.of(k, blocks) for blocks in multiset_partitions(list(range(1, k + 1)))]
    bottom, top = Partition.bottom(k), Partition.top(k)
    middle = sorted((p for p in found if p not in (bottom, top)), key=lambda p: (p.rank, p.blocks))
    ordered = [bottom] + middle + ([top] if top != bottom else [])
    if len(ordered) != int(bell(k)):
        raise PatternError(f"enumerated {len(ordered)} partitions of {k} elements, expected Bell number {bell(k)}")
    return LatticeTable(
        k=k,
        partitions=ordered,
        mobius=[mobius_bottom(p) for p in ordered],
        index={p: i for i, p in enumerate(ordered)},
    )


def mobius_recursive(table: LatticeTable, x: int, y: int, memo: Optional[Dict[Tuple[int, int], int]] = None) -> int:
    """
    μ(x, y) from the inductive definition: μ(x, x) = 1 and
    μ(x, y) = -Σ_{x ≤ z < y} μ(x, z), zero unless x ≤ y.
    """
    memo = {} if memo is None else memo
    key = (x, y)
    if key in memo:
        return memo[key]
    px, py = table.partitions[x], table.partitions[y]
    if x == y:
        value = 1
    elif not leq(px, py):
        value = 0
    else:
        value = -sum(
            mobius_recursive(table, x, z, memo)
            for z, pz in enumerate(table.partitions)
            if z != y and leq(px, pz) and leq(pz, py)
        )
    memo[key] = value
    return value


def meet_matrix(k: int, flip: Optional[Tuple[int, int]] = None) -> List[List[int]]:
    """
    A[i][j] = 1 iff P_i ∧ P_j = 0̂.

    Args:
        k: ground set size
        flip: (i, j) entry to invert; a negative control for the identity checks
    """
    if k > config.MEET_MATRIX_MAX_K:
        raise ResourceCapError("k for the meet matrix", k, config.MEET_MATRIX_MAX_K, "SUBCOUNT_MEET_MATRIX_MAX_K")
    table = partitions(k)
    size = table.bell
    rows = [[1 if table.meet_index(i, j) == 0 else 0 for j in range(size)] for i in range(size)]
    if flip is not None:
        i, j = flip
        rows[i][j] ^= 1
    return rows


def meet_matrix_det(k: int, flip: Optional[Tuple[int, int]] = None) -> int:
    """Exact determinant of the meet matrix."""
    return integer_determinant(meet_matrix(k, flip))


def mobius_product(k: int) -> int:
    """∏ over all partitions P of μ(0̂, P); equals the meet-matrix determinant."""
    return math.prod(partitions(k).mobius)
