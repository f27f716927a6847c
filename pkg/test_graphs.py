"""
Tests for the graph core: file formats, induced subgraphs, connectivity,
complements, colorings and motif specs.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

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
from graphs import (
    Coloring,
    ColorMultiset,
    Graph,
    complement,
    dump_graph,
    induced_subgraph,
    is_connected,
    is_connected_subset,
    load_coloring,
    load_graph,
    random_graph,
)
from instances import complete, cycle


@st.composite
def small_graphs(draw, max_n=10):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


# ============================================================================
# Edge-list format
# ============================================================================

def test_load_path():
    g = load_graph("3 2\n0 1\n1 2\n")
    assert g.n == 3
    assert g.sorted_edges() == [(0, 1), (1, 2)]


def test_load_single_vertex():
    g = load_graph("1 0\n")
    assert g.n == 1 and g.m == 0


def test_load_accepts_comments():
    g = load_graph("# a path\n3 2\n0 1\n# middle\n1 2\n")
    assert g.sorted_edges() == [(0, 1), (1, 2)]


def test_load_rejects_reversed_pairs():
    with pytest.raises(MalformedLineError) as info:
        load_graph("3 2\n0 1\n2 1\n")
    assert info.value.line_no == 3
    assert "smaller endpoint first" in str(info.value)


@pytest.mark.parametrize("text, error, line", [
    ("3 1\n0 3\n", VertexOutOfRangeError, 2),
    ("", MalformedHeaderError, 1),
    ("3\n", MalformedHeaderError, 1),
    ("3 1\n0 x\n", MalformedLineError, 2),
    ("3 2\n0 1\n0 1\n", DuplicateEdgeError, 3),
    ("3 1\n1 0\n", MalformedLineError, 2),
    ("3 1\n2 2\n", SelfLoopError, 2),
    ("3 2\n0 1\n", EdgeCountMismatchError, 1),
])
def test_load_errors_carry_line_numbers(text, error, line):
    with pytest.raises(error) as info:
        load_graph(text)
    assert info.value.line_no == line
    assert isinstance(info.value, ParseError)
    assert str(info.value).startswith(f"line {line}:")


def test_dump_then_load_preserves_graph():
    g = random_graph(9, 0.4, seed=3)
    assert load_graph(dump_graph(g)) == g


def test_from_edges_rejects_bad_vertices():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(1, 1)])


# ============================================================================
# Induced subgraphs and connectivity
# ============================================================================

def test_induced_subgraph_examples():
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    sub = induced_subgraph(path, {0, 2})
    assert sub.n == 2 and sub.m == 0

    triangle = induced_subgraph(complete(4), {0, 1, 2})
    assert triangle.sorted_edges() == [(0, 1), (0, 2), (1, 2)]

    c5_path = induced_subgraph(cycle(5), {0, 1, 2})
    assert c5_path.sorted_edges() == [(0, 1), (1, 2)]


def test_induced_subgraph_rejects_foreign_vertex():
    with pytest.raises(GraphError):
        induced_subgraph(cycle(5), [0, 7])


def test_is_connected_examples():
    assert is_connected(Graph.empty(1))
    assert not is_connected(Graph.empty(2))
    assert is_connected(cycle(5))


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_is_connected_matches_networkx(g):
    expected = g.n <= 1 or nx.is_connected(g.to_networkx())
    assert is_connected(g) == expected


@given(small_graphs(max_n=8), st.data())
@settings(max_examples=60, deadline=None)
def test_subset_connectivity_matches_induced_subgraph(g, data):
    vertices = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n)) if g.n else set()
    assert is_connected_subset(g, vertices) == is_connected(induced_subgraph(g, vertices))


def test_complement_examples():
    assert complement(complete(3)).m == 0
    assert complement(Graph.empty(2)).sorted_edges() == [(0, 1)]


@given(small_graphs())
@settings(max_examples=40, deadline=None)
def test_complement_is_an_involution(g):
    assert complement(complement(g)) == g
    assert nx.is_isomorphic(complement(g).to_networkx(), nx.complement(g.to_networkx()))


def test_random_graph_extremes_and_determinism():
    assert random_graph(7, 0.0, seed=1).m == 0
    assert random_graph(7, 1.0, seed=1).m == 21
    assert random_graph(12, 0.3, seed=42) == random_graph(12, 0.3, seed=42)


def test_random_graph_rejects_bad_probability():
    with pytest.raises(GraphError):
        random_graph(4, 1.5, seed=0)


# ============================================================================
# Colorings and motifs
# ============================================================================

def test_named_colors_get_sorted_ids():
    coloring = load_coloring("0 red\n1 blue\n2 blue\n", 3)
    assert coloring.colors == (2, 1, 1)
    assert coloring.color_id("red") == 2
    assert coloring.name_of(1) == "blue"


def test_integer_colors_are_used_directly():
    coloring = load_coloring("0 3\n1 1\n", 2)
    assert coloring.colors == (3, 1)


def test_coloring_must_cover_every_vertex():
    with pytest.raises(ColoringError):
        load_coloring("0 red\n", 2)
    with pytest.raises(VertexOutOfRangeError):
        load_coloring("5 red\n", 2)
    with pytest.raises(ParseError):
        load_coloring("0 red\n0 blue\n1 red\n", 2)


def test_motif_spec_parsing():
    coloring = load_coloring("0 red\n1 blue\n2 blue\n3 blue\n", 4)
    motif = ColorMultiset.parse("red:1,blue:2", coloring)
    assert motif.size == 3
    assert motif.as_dict() == {coloring.color_id("red"): 1, coloring.color_id("blue"): 2}


def test_unknown_motif_color_matches_nothing():
    coloring = Coloring.of([1, 1, 2])
    motif = ColorMultiset.parse("green:2", coloring)
    assert not set(motif.as_dict()) & coloring.palette


@pytest.mark.parametrize("spec", ["red", "red:x", "red:0", ""])
def test_malformed_motif_specs(spec):
    with pytest.raises(ParseError):
        ColorMultiset.parse(spec, Coloring.of([1]))
