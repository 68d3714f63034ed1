from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nestedtrees.complexes import SimplicialComplex, barycentric_subdivision
from nestedtrees.homology import (
    DEFAULT_PRIME,
    boundary_matrix,
    rank,
    reduced_betti,
    reduced_euler_characteristic,
    top_cycle_basis,
)
from nestedtrees.lattice import build_partition_lattice
from nestedtrees.complexes import order_complex
from nestedtrees.trees import enumerate_tn

TORUS = SimplicialComplex(
    [(i, (i + a) % 7, (i + b) % 7) for i in range(7) for a, b in ((1, 3), (2, 3))]
)
RP2 = SimplicialComplex(
    [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2), (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]
)


def sphere(d):
    return SimplicialComplex(itertools.combinations(range(d + 2), d + 1))


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_sphere(d):
    assert reduced_betti(sphere(d)) == [0] * d + [1]


def test_torus():
    assert TORUS.f_vector == (7, 21, 14)
    assert reduced_betti(TORUS) == [0, 2, 1]
    assert reduced_betti(TORUS, DEFAULT_PRIME) == [0, 2, 1]


def test_projective_plane_torsion_shows_mod_2():
    assert RP2.f_vector == (6, 15, 10)
    assert all(len(RP2.star_facets(e)) == 2 for e in RP2.edges())
    assert reduced_betti(RP2) == [0, 0, 0]
    assert reduced_betti(RP2, 2) == [0, 1, 1]
    assert reduced_betti(RP2, "prime:3") == [0, 0, 0]


def test_field_parsing():
    with pytest.raises(ValueError):
        reduced_betti(TORUS, "prime:6")
    with pytest.raises(ValueError):
        reduced_betti(TORUS, "reals")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_numpy(rows):
    M = np.array(rows, dtype=np.int64)
    assert rank(M) == np.linalg.matrix_rank(M.astype(float))


complexes = st.lists(st.frozensets(st.integers(0, 7), min_size=1, max_size=4), min_size=1, max_size=7).map(SimplicialComplex)


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_boundary_squares_to_zero_and_euler(K):
    for d in range(1, K.dim + 1):
        assert not np.any(boundary_matrix(K, d - 1) @ boundary_matrix(K, d))
    b = reduced_betti(K)
    assert sum((-1) ** i * x for i, x in enumerate(b)) == reduced_euler_characteristic(K)
    assert b == reduced_betti(K, DEFAULT_PRIME)


def test_barycentric_preserves_betti():
    assert reduced_betti(barycentric_subdivision(TORUS)) == [0, 2, 1]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_tree_complex_is_wedge_of_spheres(n):
    from math import factorial

    assert reduced_betti(enumerate_tn(n)) == [0] * (n - 3) + [factorial(n - 1)]


def test_order_complex_pi5():
    assert reduced_betti(order_complex(build_partition_lattice(5))) == [0, 0, 24]


def test_top_cycle_basis():
    K = enumerate_tn(5)
    Z = top_cycle_basis(K)
    assert Z.shape == (105, 24)
    D = boundary_matrix(K, K.dim).astype(object)
    assert not np.any(D.dot(Z))
    assert rank(Z.T) == 24
