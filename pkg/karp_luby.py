"""
Union Estimation

Monte Carlo estimate of |A_1 ∪ ... ∪ A_m| from three oracles per set: exact
size, uniform sample and membership. Each trial picks a set with probability
proportional to its size, draws a uniform element of it, and accepts when
that set is the element's canonical (lowest-index) set. The estimate is
S · accepted / trials, with S the sum of the set sizes.

Trials run in fixed-size chunks, each with its own substream seeded from
(seed, chunk index), so the result for a seed does not depend on how many
worker processes share the chunks.
"""

from __future__ import annotations

import bisect
import itertools
import math
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from fractions import Fraction
from multiprocessing import Pool
from typing import Any, Hashable, Iterable, Iterator, List, Literal, Optional, Sequence, Tuple

import config
from errors import InstanceError, NoWitnessError, NonEnumerableSystemError, OracleInconsistencyError

# "sets": trials scale with the number of sets m. "multiplicity": with the
# system's bound on sets per element, which never exceeds m.
TrialRule = Literal["sets", "multiplicity"]
TRIAL_RULES = ("sets", "multiplicity")


class SetSystem(ABC):
    """Indexed family of finite sets with size, sample and membership oracles."""

    @property
    @abstractmethod
    def m(self) -> int:
        """Number of sets."""

    @abstractmethod
    def size(self, i: int) -> int:
        """Exact |A_i|."""

    @abstractmethod
    def sample(self, i: int, rng: random.Random) -> Any:
        """Uniform element of A_i; raises NoWitnessError when A_i is empty."""

    @abstractmethod
    def contains(self, i: int, x: Any) -> bool:
        """Membership x ∈ A_i."""

    def first_index(self, x: Any) -> Optional[int]:
        """Lowest index of a set containing x."""
        for j in range(self.m):
            if self.size(j) and self.contains(j, x):
                return j
        return None

    def multiplicity_bound(self) -> Optional[int]:
        """Upper bound on how many sets one element can belong to, if known."""
        return None

    def elements(self, i: int) -> Iterator[Any]:
        """All elements of A_i; only enumerable systems support this."""
        raise NonEnumerableSystemError(f"{type(self).__name__} cannot enumerate its sets")


class ExplicitSetSystem(SetSystem):
    """Set system over materialized sets of comparable elements."""

    def __init__(self, sets: Iterable[Iterable[Hashable]]):
        self.sets: Tuple[frozenset, ...] = tuple(frozenset(s) for s in sets)
        self._ordered = tuple(tuple(sorted(s)) for s in self.sets)

    @property
    def m(self) -> int:
        return len(self.sets)

    def size(self, i: int) -> int:
        return len(self.sets[i])

    def sample(self, i: int, rng: random.Random) -> Any:
        if not self._ordered[i]:
            raise NoWitnessError(f"set {i} is empty")
        return self._ordered[i][rng.randrange(len(self._ordered[i]))]

    def contains(self, i: int, x: Any) -> bool:
        return x in self.sets[i]

    def elements(self, i: int) -> Iterator[Any]:
        return iter(self._ordered[i])


@dataclass(frozen=True)
class Estimate:
    """
    Union estimate with its provenance.

    value = total_size * accepted / trials, divided by `divisor` when the
    estimate was rescaled (e.g. by k! for unlabelled counts).
    """
    value: Fraction
    epsilon: float
    delta: float
    trials: int
    accepted: int
    total_size: int
    m: int
    m_nonempty: int
    multiplicity: int
    seed: int
    trial_rule: str = "sets"
    divisor: int = 1
    family_mode: Optional[str] = None
    family_size: Optional[int] = None
    delta_family: Optional[float] = None
    delta_estimator: Optional[float] = None

    def scaled(self, divisor: int) -> "Estimate":
        return replace(self, value=self.value / divisor, divisor=self.divisor * divisor)

    def __float__(self) -> float:
        return float(self.value)


def trial_count(sets: int, epsilon: float, delta: float) -> int:
    """ceil((3 m / ε²) · ln(2/δ)) for m sets (or a bound on sets per element)."""
    return math.ceil(3 * sets / epsilon ** 2 * math.log(2 / delta))


def _check_accuracy(epsilon: float, delta: float) -> None:
    if not epsilon > 0:
        raise InstanceError(f"epsilon must be positive, got {epsilon}")
    if not 0 < delta < 1:
        raise InstanceError(f"delta must lie in (0, 1), got {delta}")


def _chunk_rng(seed: int, chunk: int) -> random.Random:
    return random.Random(f"{seed}:{chunk}")


def _run_chunk(
    system: SetSystem,
    indices: Sequence[int],
    cumulative: Sequence[int],
    seed: int,
    chunk: int,
    trials: int,
) -> int:
    rng = _chunk_rng(seed, chunk)
    total = cumulative[-1]
    accepted = 0
    for _ in range(trials):
        i = indices[bisect.bisect_right(cumulative, rng.randrange(total))]
        x = system.sample(i, rng)
        if not system.contains(i, x):
            raise OracleInconsistencyError(f"element {x!r} sampled from set {i} fails its membership test")
        if system.first_index(x) == i:
            accepted += 1
    return accepted


_WORKER: dict = {}


def _init_worker(system, indices, cumulative, seed) -> None:
    _WORKER.update(system=system, indices=indices, cumulative=cumulative, seed=seed)


def _worker_chunk(task: Tuple[int, int]) -> int:
    chunk, trials = task
    return _run_chunk(_WORKER["system"], _WORKER["indices"], _WORKER["cumulative"], _WORKER["seed"], chunk, trials)


def estimate_union(
    system: SetSystem,
    epsilon: float,
    delta: float,
    seed: int,
    workers: int = 1,
    trial_rule: TrialRule = "sets",
) -> Estimate:
    """
    Estimate the union cardinality within a factor (1 ± ε) with probability ≥ 1 - δ.

    Args:
        system: the indexed sets
        epsilon: relative error
        delta: failure probability
        seed: base seed; equal seeds give equal estimates
        workers: worker processes for the trials (result independent of it)
        trial_rule: "sets" sizes the run by m; "multiplicity" by the system's
            bound on sets per element (reported as `multiplicity` either way)

    Returns:
        Estimate; exactly 0 with zero trials when every set is empty

    Raises:
        OracleInconsistencyError: a sampled element is not in its own set
    """
    _check_accuracy(epsilon, delta)
    if trial_rule not in TRIAL_RULES:
        raise InstanceError(f"unknown trial rule {trial_rule!r}; choose from {', '.join(TRIAL_RULES)}")
    sizes = [system.size(i) for i in range(system.m)]
    indices = [i for i, s in enumerate(sizes) if s > 0]
    total = sum(sizes)
    if total == 0:
        return Estimate(Fraction(0), epsilon, delta, 0, 0, 0, system.m, 0, 0, seed, trial_rule)

    bound = system.multiplicity_bound()
    multiplicity = len(indices) if bound is None else max(1, min(bound, len(indices)))
    trials = trial_count(system.m if trial_rule == "sets" else multiplicity, epsilon, delta)
    cumulative = list(itertools.accumulate(sizes[i] for i in indices))

    chunk = max(1, config.TRIAL_CHUNK)
    tasks = [(c, min(chunk, trials - c * chunk)) for c in range(math.ceil(trials / chunk))]
    if workers > 1 and len(tasks) > 1:
        with Pool(processes=min(workers, len(tasks)), initializer=_init_worker,
                  initargs=(system, indices, cumulative, seed)) as pool:
            accepted = sum(pool.map(_worker_chunk, tasks))
    else:
        accepted = sum(_run_chunk(system, indices, cumulative, seed, c, n) for c, n in tasks)

    return Estimate(
        value=Fraction(total * accepted, trials),
        epsilon=epsilon,
        delta=delta,
        trials=trials,
        accepted=accepted,
        total_size=total,
        m=system.m,
        m_nonempty=len(indices),
        multiplicity=multiplicity,
        seed=seed,
        trial_rule=trial_rule,
    )


def exact_union(system: SetSystem) -> int:
    """
    Exact |∪ A_i| by listing every set.

    Raises:
        NonEnumerableSystemError: the system cannot list its elements
    """
    seen = set()
    for i in range(system.m):
        if system.size(i):
            seen.update(system.elements(i))
    return len(seen)


def canonical_partition_sizes(system: SetSystem) -> List[int]:
    """|{x ∈ A_i : i is the lowest index containing x}| for each i."""
    return [
        sum(1 for x in system.elements(i) if system.first_index(x) == i) if system.size(i) else 0
        for i in range(system.m)
    ]
