"""
Named Instances

Small fixed graphs used by `gen` and by the tests: cycles, complete graphs,
the Petersen graph and a red-centered star with blue leaves.
"""

from typing import Callable, Dict, Optional, Tuple

import networkx as nx

from errors import InstanceError
from graphs import Coloring, Graph


def cycle(n: int) -> Graph:
    if n < 3:
        raise InstanceError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_networkx(nx.cycle_graph(n))


def complete(n: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(n))


def petersen(n: Optional[int] = None) -> Graph:
    return Graph.from_networkx(nx.petersen_graph())


def star(n: int) -> Graph:
    """K_{1,n-1} with center 0."""
    if n < 1:
        raise InstanceError("a star needs at least one vertex")
    return Graph.from_networkx(nx.star_graph(n - 1))


def star_coloring(n: int) -> Coloring:
    """Center red, leaves blue (ids in sorted name order: blue = 1, red = 2)."""
    return Coloring(colors=(2,) + (1,) * (n - 1), names=((1, "blue"), (2, "red")))


NAMED: Dict[str, Callable[[int], Graph]] = {
    "cycle": cycle,
    "complete": complete,
    "petersen": petersen,
    "star": star,
}


def named_instance(name: str, n: Optional[int] = None) -> Tuple[Graph, Optional[Coloring]]:
    """
    Build a named instance.

    Args:
        name: cycle, complete, petersen or star
        n: vertex count (ignored for petersen; defaults to 5, or 4 for star)

    Returns:
        (graph, coloring); only the star comes with a coloring
    """
    if name not in NAMED:
        raise InstanceError(f"unknown instance {name!r}; choose from {', '.join(sorted(NAMED))}")
    if n is None:
        n = 4 if name == "star" else 5
    graph = NAMED[name](n)
    coloring = star_coloring(graph.n) if name == "star" else None
    return graph, coloring
