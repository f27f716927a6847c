"""
Tests for the partition lattice: enumeration, order, meets, Möbius values
and the meet-matrix determinant.
"""

import itertools
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pytest
from sympy import Matrix, bell

from errors import PatternError, ResourceCapError
from lattice import (
    Partition,
    indicator,
    leq,
    meet,
    meet_matrix,
    meet_matrix_det,
    mobius_bottom,
    mobius_product,
    mobius_recursive,
    partitions,
)
from state import SuiteSettings
from verification import run_suite


@pytest.mark.parametrize("k, expected", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203)])
def test_bell_numbers(k, expected):
    table = partitions(k)
    assert table.bell == expected == int(bell(k))
    assert len(set(table.partitions)) == expected


def test_table_order_puts_bottom_first_and_top_last():
    table = partitions(4)
    assert table.partitions[0] == Partition.bottom(4)
    assert table.partitions[-1] == Partition.top(4)
    ranks = [p.rank for p in table.partitions]
    assert ranks == sorted(ranks)


def test_partition_canonical_form():
    p = Partition.of(4, [[4, 2], [3, 1]])
    assert p.blocks == ((1, 3), (2, 4))
    assert str(p) == "{{1,3}, {2,4}}"
    assert Partition.from_labels([7, 9, 7, 9]) == p
    with pytest.raises(PatternError):
        Partition.of(3, [[1, 2]])


def test_order_and_meet():
    bottom, top = Partition.bottom(3), Partition.top(3)
    p = Partition.of(3, [[1, 2], [3]])
    q = Partition.of(3, [[1], [2, 3]])
    assert leq(bottom, p) and leq(p, top)
    assert not leq(p, q) and not leq(q, p)
    assert meet(p, q) == bottom
    assert meet(p, top) == p
    assert meet(p, p) == p


def test_meet_is_the_greatest_lower_bound():
    table = partitions(4)
    for p, q in itertools.combinations(table.partitions, 2):
        m = meet(p, q)
        assert leq(m, p) and leq(m, q)
        lower = [r for r in table.partitions if leq(r, p) and leq(r, q)]
        assert all(leq(r, m) for r in lower)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_mobius_closed_form_matches_recursion(k):
    table = partitions(k)
    memo = {}
    for i, p in enumerate(table.partitions):
        assert mobius_recursive(table, 0, i, memo) == mobius_bottom(p) == table.mobius[i]


def test_mobius_examples():
    assert mobius_bottom(Partition.bottom(4)) == 1
    assert mobius_bottom(Partition.top(3)) == 2
    assert mobius_bottom(Partition.top(4)) == -6


def test_indicator_marks_only_the_bottom():
    table = partitions(4)
    assert [indicator(p) for p in table.partitions] == [1] + [0] * (table.bell - 1)


@pytest.mark.parametrize("k, expected", [(2, -1), (3, -2)])
def test_meet_matrix_determinant_examples(k, expected):
    assert meet_matrix_det(k) == expected


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_determinant_equals_mobius_product(k):
    assert meet_matrix_det(k) == mobius_product(k)
    assert meet_matrix_det(k) == Matrix(meet_matrix(k)).det()


def test_six_element_lattice():
    table = partitions(6)
    assert table.bell == 203
    assert table.mobius[-1] == -120
    det = meet_matrix_det(6)
    assert det == mobius_product(6) != 0


def test_lattice_laws_suite_reaches_six():
    results = run_suite("lattice_laws", SuiteSettings(k_max=6, instances=1, seed=1, inject_fault=False, timing=False))
    assert [r.parameters["k"] for r in results] == [1, 2, 3, 4, 5, 6]
    assert all(r.passed for r in results)
    mobius = run_suite("mobius_values", SuiteSettings(k_max=6, instances=1, seed=1, inject_fault=False, timing=False))
    assert mobius[-1].parameters == {"k": 6, "bell": 203} and mobius[-1].passed


def test_mobius_product_sign_and_size():
    for k in range(1, 7):
        product = mobius_product(k)
        assert product != 0
        assert abs(product) == math.prod(math.factorial(p.rank) for p in partitions(k).partitions)


def test_flipped_entry_breaks_the_identity():
    k = 2
    last = partitions(k).bell - 1
    assert meet_matrix_det(k, flip=(last, last)) != mobius_product(k)


def test_lattice_size_is_capped():
    with pytest.raises(ResourceCapError):
        partitions(30)
    with pytest.raises(ResourceCapError):
        meet_matrix(20)
