from __future__ import annotations

import itertools

import numpy as np
import pytest

from nestedtrees.lattice import (
    LatticeError,
    SetPartition,
    build_block_size_poset,
    build_boolean_lattice,
    build_chain,
    build_k_equal_lattice,
    build_partition_lattice,
    factors,
    irreducibles,
    is_building_set,
    maximal_building_set,
    set_partitions,
)


def bell(n: int) -> int:
    # Bell triangle
    row = [1]
    for _ in range(n - 1):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
    return row[-1]


def brute_k_equal(n, k):
    """Join closure of single k-blocks by repeated pairwise joins, plus the bottom."""
    gens = {SetPartition.single_block(c, n) for c in itertools.combinations(range(1, n + 1), k)}
    closed = set(gens)
    frontier = set(gens)
    while frontier:
        new = {a.join(b) for a in frontier for b in closed} - closed
        closed |= new
        frontier = new
    return closed | {SetPartition.bottom(n)}


@pytest.mark.parametrize("n", range(2, 8))
def test_partition_lattice_size_matches_bell(n):
    assert len(build_partition_lattice(n)) == bell(n)


def test_set_partitions_distinct():
    parts = list(set_partitions(5))
    assert len(parts) == len(set(parts)) == 52


def test_partition_string_forms():
    p = SetPartition.parse("1|23|45")
    assert str(p) == "1|23|45"
    assert p.short() == "23|45"
    assert SetPartition.bottom(4).short() == "0"
    assert SetPartition.from_blocks([[2, 3], [1, 4, 5]]).short() == "145|23"
    assert SetPartition.parse(str(p), 5) == p


def test_partition_join_meet():
    a = SetPartition.parse("12|3|4")
    b = SetPartition.parse("1|23|4")
    assert str(a.join(b)) == "123|4"
    assert a.meet(b) == SetPartition.bottom(4)
    assert a.refines(a.join(b))


def test_join_meet_tables_agree_with_partitions():
    L = build_partition_lattice(4)
    J = L.join_table
    M = L.meet_table
    for i, j in itertools.product(range(len(L)), repeat=2):
        assert L[J[i, j]] == L[i].join(L[j])
        assert L[M[i, j]] == L[i].meet(L[j])


def test_validate_and_rank():
    L = build_partition_lattice(5)
    L.validate()
    assert L[L.bottom] == SetPartition.bottom(5)
    assert int(L.rank[L.top]) == 4
    assert all(int(L.rank[i]) == L[i].rank for i in range(len(L)))
    assert len(L.atoms) == 10


@pytest.mark.parametrize("n,k", [(4, 3), (5, 3), (6, 3), (6, 4), (5, 2)])
def test_k_equal_matches_brute_closure(n, k):
    L = build_k_equal_lattice(n, k)
    assert set(L.elements) == brute_k_equal(n, k)


def test_k_equal_sizes():
    assert len(build_k_equal_lattice(5, 3)) == 17
    assert len(build_k_equal_lattice(7, 3)) == 205
    assert len(build_k_equal_lattice(5, 2)) == 52


def test_k_equal_rejects_bad_k():
    with pytest.raises(LatticeError):
        build_k_equal_lattice(4, 5)


def test_size_cap():
    with pytest.raises(LatticeError):
        build_partition_lattice(9)


def test_block_size_poset():
    P = build_block_size_poset(5, 2)
    assert not P.is_lattice
    assert len(P.proper_part()) == 10
    assert all(all(len(b) % 2 == 1 for b in x.blocks) for x in P.elements)


def test_irreducibles_of_boolean_and_chain():
    B = build_boolean_lattice(3)
    assert irreducibles(B) == frozenset(B.atoms)
    C = build_chain(3)
    assert irreducibles(C) == frozenset(i for i in range(len(C)) if i != C.bottom)


def connected(block_partition: SetPartition) -> bool:
    return len(block_partition.nonsingleton_blocks()) == 1


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_partition_irreducibles_are_single_blocks(n):
    L = build_partition_lattice(n)
    expected = {i for i in range(len(L)) if i != L.bottom and connected(L[i])}
    assert irreducibles(L) == expected
    assert len(expected) == 2**n - n - 1


def test_building_sets_of_pi4():
    L = build_partition_lattice(4)
    assert is_building_set(L, irreducibles(L))
    assert not is_building_set(L, L.atoms)
    assert is_building_set(L, maximal_building_set(L).members)


def test_factors_are_blocks():
    L = build_partition_lattice(5)
    I = irreducibles(L)
    X = L.index(SetPartition.parse("145|23", 5))
    got = sorted(L[f].short() for f in factors(L, I, X))
    assert got == ["145", "23"]


@pytest.mark.parametrize("n,k", [(5, 3), (6, 3), (6, 4)])
def test_k_equal_irreducibles_form_building_set(n, k):
    L = build_k_equal_lattice(n, k)
    assert is_building_set(L, irreducibles(L))


def test_leq_is_partial_order():
    L = build_k_equal_lattice(6, 3)
    A = L.leq.astype(bool)
    assert np.all(np.diag(A))
    assert not np.any(A & A.T & ~np.eye(len(L), dtype=bool))
    assert np.array_equal((A.astype(int) @ A.astype(int)) > 0, A)
