"""
k-Perfect Hash Families

Families of functions {0..n-1} → {1..k} such that every k-subset of vertices
is colored injectively by at least one member.

Two constructions:
- exact-greedy: random candidates are added while they cover some
  still-uncovered k-subset, until every subset is covered. Certified, but
  enumerates all C(n, k) subsets.
- randomized: r = ceil((k^k / k!) * (k ln n + ln(1/delta_h))) independent
  uniform functions. A fixed k-subset is missed by one function with
  probability 1 - k!/k^k, so the union bound over at most n^k subsets keeps
  the chance of any miss below delta_h.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Literal, Optional, Sequence, Tuple

import config
from errors import HashFamilyError, InstanceError, ResourceCapError

FamilyMode = Literal["exact-greedy", "randomized"]


@dataclass(frozen=True)
class HashFamily:
    """
    Explicit family: members[j][v] is the color member j gives vertex v.

    Attributes:
        n, k: domain size and number of colors
        members: one tuple of length n per function, values in 1..k
        mode: construction that produced the family
        failure_budget: delta_h for randomized families
        seed: construction seed
    """
    n: int
    k: int
    members: Tuple[Tuple[int, ...], ...]
    mode: FamilyMode
    failure_budget: Optional[float] = None
    seed: Optional[int] = None

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> str:
        """n × r table, one column per member."""
        return json.dumps({
            "n": self.n,
            "k": self.k,
            "mode": self.mode,
            "failure_budget": self.failure_budget,
            "seed": self.seed,
            "table": [[f[v] for f in self.members] for v in range(self.n)],
        })

    @classmethod
    def from_json(cls, text: str) -> "HashFamily":
        data = json.loads(text)
        table = data["table"]
        r = len(table[0]) if table else 0
        members = tuple(tuple(row[j] for row in table) for j in range(r))
        family = cls(
            n=data["n"],
            k=data["k"],
            members=members,
            mode=data["mode"],
            failure_budget=data.get("failure_budget"),
            seed=data.get("seed"),
        )
        family.check_range()
        return family

    def check_range(self) -> None:
        for j, f in enumerate(self.members):
            if len(f) != self.n or any(not 1 <= c <= self.k for c in f):
                raise HashFamilyError(f"member {j} does not map {self.n} vertices into 1..{self.k}")


def randomized_size(n: int, k: int, delta_h: float) -> int:
    """ceil((k^k / k!) * (k ln n + ln(1/delta_h))) with the ratio kept exact."""
    if not 0 < delta_h < 1:
        raise HashFamilyError(f"family failure budget must lie in (0, 1), got {delta_h}")
    log_term = Fraction(k * math.log(n) + math.log(1 / delta_h))
    return max(1, math.ceil(Fraction(k ** k, math.factorial(k)) * log_term))


def _check_exact_cap(n: int, k: int) -> None:
    subsets = math.comb(n, k)
    if subsets > config.HASH_EXACT_SUBSET_CAP:
        raise ResourceCapError("C(n, k) for exact k-subset enumeration", subsets,
                               config.HASH_EXACT_SUBSET_CAP, "SUBCOUNT_HASH_EXACT_SUBSET_CAP")


def _injective_on(f: Sequence[int], subset: Sequence[int], k: int) -> bool:
    return len({f[v] for v in subset}) == k


def build_family(n: int, k: int, mode: FamilyMode, delta_h: Optional[float] = None, seed: int = 0) -> HashFamily:
    """
    Build a k-perfect (or probably k-perfect) family.

    Args:
        n: number of vertices
        k: number of colors, 1 ≤ k ≤ n
        mode: "exact-greedy" or "randomized"
        delta_h: failure budget for randomized mode
        seed: seed for the candidate functions

    Raises:
        InstanceError: k outside 1..n
        ResourceCapError: exact mode with too many k-subsets
    """
    if not 1 <= k <= n:
        raise InstanceError(f"need 1 ≤ k ≤ n, got k={k}, n={n}")
    if n == k:
        return HashFamily(n, k, (tuple(range(1, k + 1)),), mode, delta_h, seed)

    rng = random.Random(seed)
    if mode == "randomized":
        r = randomized_size(n, k, delta_h if delta_h is not None else 0.01)
        members = tuple(tuple(rng.randint(1, k) for _ in range(n)) for _ in range(r))
        return HashFamily(n, k, members, mode, delta_h, seed)
    if mode != "exact-greedy":
        raise HashFamilyError(f"unknown family mode {mode!r}")

    _check_exact_cap(n, k)
    uncovered: List[Tuple[int, ...]] = list(itertools.combinations(range(n), k))
    members = []
    while uncovered:
        f = [rng.randint(1, k) for _ in range(n)]
        if not any(_injective_on(f, s, k) for s in uncovered):
            # repair: make the first uncovered subset colorful
            for v, color in zip(uncovered[0], rng.sample(range(1, k + 1), k)):
                f[v] = color
        members.append(tuple(f))
        uncovered = [s for s in uncovered if not _injective_on(f, s, k)]
    return HashFamily(n, k, tuple(members), mode, None, seed)


def is_k_perfect(family: HashFamily, n: int, k: int) -> bool:
    """True iff every k-subset of {0..n-1} is colored injectively by some member."""
    _check_exact_cap(n, k)
    return all(
        any(_injective_on(f, subset, k) for f in family.members)
        for subset in itertools.combinations(range(n), k)
    )
