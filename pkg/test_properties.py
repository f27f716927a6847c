"""
Tests for labelled patterns, bundled properties, minimal-pattern
enumeration, monotonicity and pattern files.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import networkx as nx
import pytest

from errors import NonMonotonePropertyError, ParseError, PatternError, PropertyError, ResourceCapError
from properties import (
    CLIQUE,
    CONNECTED,
    EDGELESS,
    HAMILTONIAN,
    NON_BIPARTITE,
    PATH,
    LabelledPattern,
    all_labelled_patterns,
    check_monotone,
    get_property,
    load_pattern_file,
    minimal_patterns,
    minimal_patterns_by_filtering,
    pattern_subset,
    phi_connected,
    phi_hamiltonian,
    phi_non_bipartite,
    property_from_patterns,
    prufer_trees,
    require_monotone,
)

P = LabelledPattern.of


# ============================================================================
# Predicates
# ============================================================================

def test_phi_connected_examples():
    assert phi_connected(P(3, [(1, 2), (2, 3)]))
    assert not phi_connected(P(2))
    assert phi_connected(P(4, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]))


def test_phi_hamiltonian_needs_a_spanning_cycle():
    assert phi_hamiltonian(P(4, [(1, 2), (2, 3), (3, 4), (1, 4)]))
    assert not phi_hamiltonian(P(4, [(1, 2), (2, 3), (3, 4)]))
    assert not phi_hamiltonian(P(2, [(1, 2)]))


def test_predicates_agree_with_networkx_on_every_four_label_pattern():
    for p in all_labelled_patterns(4):
        g = p.to_networkx()
        assert phi_connected(p) == nx.is_connected(g)
        assert phi_non_bipartite(p) == (not nx.is_bipartite(g))


def test_path_property_is_label_sensitive():
    assert PATH(P(3, [(1, 2), (2, 3)]))
    assert not PATH(P(3, [(1, 3), (3, 2)]))
    assert not PATH.symmetric


def test_pattern_subset():
    assert pattern_subset(P(3, [(1, 2)]), P(3, [(1, 2), (2, 3), (1, 3)]))
    assert not pattern_subset(P(3, [(1, 2)]), P(3, [(2, 3)]))
    with pytest.raises(PatternError):
        pattern_subset(P(2), P(3))


def test_pattern_rejects_labels_outside_range():
    with pytest.raises(PatternError):
        P(3, [(1, 4)])
    with pytest.raises(PatternError):
        P(3, [(2, 2)])


# ============================================================================
# Minimal patterns
# ============================================================================

@pytest.mark.parametrize("prop, k, expected", [
    (CONNECTED, 3, 3),
    (CONNECTED, 4, 16),
    (HAMILTONIAN, 4, 3),
    (HAMILTONIAN, 5, 12),
    (CLIQUE, 4, 1),
])
def test_minimal_pattern_counts(prop, k, expected):
    assert len(minimal_patterns(prop, k)) == expected


@pytest.mark.parametrize("k, expected", [(1, 1), (2, 1), (3, 3), (4, 16), (5, 125), (6, 1296), (7, 16807)])
def test_prufer_trees_follow_cayley(k, expected):
    trees = prufer_trees(k)
    assert len(trees) == expected
    assert len(set(trees)) == expected
    assert all(len(t.edges) == k - 1 and phi_connected(t) for t in trees)


@pytest.mark.parametrize("prop", [CONNECTED, HAMILTONIAN, NON_BIPARTITE, CLIQUE, PATH])
@pytest.mark.parametrize("k", [3, 4, 5])
def test_direct_enumerators_match_filtering(prop, k):
    assert minimal_patterns(prop, k) == minimal_patterns_by_filtering(prop, k)


@pytest.mark.parametrize("prop", [CONNECTED, HAMILTONIAN, NON_BIPARTITE, CLIQUE, PATH])
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_minimal_patterns_reconstruct_the_property(prop, k):
    minimal = minimal_patterns(prop, k)
    for p in all_labelled_patterns(k):
        assert prop(p) == any(pattern_subset(q, p) for q in minimal), p


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_filtering_connected_patterns_yields_cayley_many_trees(k):
    filtered = minimal_patterns_by_filtering(CONNECTED, k)
    assert len(filtered) == k ** (k - 2)
    assert filtered == prufer_trees(k)


def test_minimal_patterns_come_in_canonical_order():
    patterns = minimal_patterns(CONNECTED, 4)
    assert list(patterns) == sorted(patterns, key=LabelledPattern.sort_key)


def test_minimal_patterns_are_pairwise_incomparable():
    patterns = minimal_patterns(NON_BIPARTITE, 5)
    for p in patterns:
        for q in patterns:
            assert p == q or not pattern_subset(p, q)


def test_exhaustive_filtering_is_capped():
    with pytest.raises(ResourceCapError):
        minimal_patterns_by_filtering(CONNECTED, 40)


# ============================================================================
# Monotonicity and registry
# ============================================================================

@pytest.mark.parametrize("prop, k, expected", [
    (CONNECTED, 4, True),
    (NON_BIPARTITE, 4, True),
    (HAMILTONIAN, 4, True),
    (EDGELESS, 2, False),
])
def test_check_monotone(prop, k, expected):
    assert check_monotone(prop, k) is expected


def test_bundled_monotone_flags_are_honest():
    for prop in (CONNECTED, HAMILTONIAN, NON_BIPARTITE, CLIQUE, PATH):
        assert prop.monotone and check_monotone(prop, 4)


def test_require_monotone_rejects_edgeless():
    require_monotone(CONNECTED)
    with pytest.raises(NonMonotonePropertyError):
        require_monotone(EDGELESS)


def test_get_property():
    assert get_property("non-bipartite") is NON_BIPARTITE
    with pytest.raises(PropertyError):
        get_property("planar")


# ============================================================================
# Pattern files
# ============================================================================

def test_pattern_file_of_all_three_paths_is_symmetric():
    prop = load_pattern_file("3 3\n1-2,2-3\n1-2,1-3\n1-3,2-3\n", name="paths3")
    assert prop.symmetric
    assert prop.pattern_size == 3
    assert prop.treewidth_bound == 1
    assert minimal_patterns(prop, 3) == minimal_patterns(CONNECTED, 3)


def test_pattern_list_property_accepts_supersets():
    prop = property_from_patterns("has-12", 3, [P(3, [(1, 2)])])
    assert prop(P(3, [(1, 2), (2, 3)]))
    assert not prop(P(3, [(1, 3), (2, 3)]))
    with pytest.raises(PatternError):
        property_from_patterns("mixed", 3, [P(4, [(1, 2)])])


def test_pattern_file_keeps_only_minimal_entries():
    prop = load_pattern_file("# triangle is redundant\n3 2\n1-2\n1-2,2-3,1-3\n")
    assert minimal_patterns(prop, 3) == (P(3, [(1, 2)]),)
    assert not prop.symmetric


def test_edgeless_pattern_line():
    prop = load_pattern_file("2 1\n-\n")
    assert all(prop(p) for p in all_labelled_patterns(2))


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ("3\n", 1),
    ("3 2\n1-2\n", 1),
    ("3 1\n1-4\n", 2),
    ("3 1\n1:2\n", 2),
    ("3 1\n2-2\n", 2),
])
def test_malformed_pattern_files(text, line):
    with pytest.raises(ParseError) as info:
        load_pattern_file(text)
    assert info.value.line_no == line
