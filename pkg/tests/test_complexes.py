from __future__ import annotations

import itertools
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nestedtrees.complexes import (
    ComplexError,
    SimplicialComplex,
    barycentric_subdivision,
    complexes_equal,
    nested_set_complex,
    order_complex,
    stellar_subdivision,
    subdivide_to_order_complex,
    verify_remark3_non_refinement,
)
from nestedtrees.lattice import (
    SetPartition,
    build_boolean_lattice,
    build_k_equal_lattice,
    build_partition_lattice,
    irreducibles,
    maximal_building_set,
)


def all_faces(K: SimplicialComplex) -> set[frozenset]:
    out = set()
    for f in K.facets:
        for r in range(1, len(f) + 1):
            out.update(frozenset(c) for c in itertools.combinations(f, r))
    return out


def stellar_by_faces(K, F, v):
    """Face-level definition: drop faces containing F, cone v over (boundary F) * link F."""
    faces = all_faces(K)
    keep = {s for s in faces if not F <= s}
    link = {s - F for s in faces if F <= s}
    cone = set()
    for r in range(len(F)):
        for G in itertools.combinations(F, r):
            for H in link:
                cone.add(frozenset(G) | H | {v})
    return keep | cone


complexes = st.lists(st.frozensets(st.integers(0, 6), min_size=1, max_size=4), min_size=1, max_size=6).map(SimplicialComplex)


@settings(max_examples=60, deadline=None)
@given(complexes, st.data())
def test_stellar_matches_face_definition(K, data):
    candidates = sorted((f for f in all_faces(K) if len(f) >= 2), key=sorted)
    if not candidates:
        return
    F = data.draw(st.sampled_from(candidates))
    S = stellar_subdivision(K, F, 99)
    assert all_faces(S) == stellar_by_faces(K, F, 99)
    assert S.euler_characteristic() == K.euler_characteristic()


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_json_round_trip(K):
    back = SimplicialComplex.from_json(K.to_json())
    assert complexes_equal(K, back, str)
    assert back.to_json() == K.to_json()


@settings(max_examples=30, deadline=None)
@given(complexes)
def test_barycentric_euler(K):
    B = barycentric_subdivision(K)
    assert B.euler_characteristic() == K.euler_characteristic()
    assert len(B.vertices) == len(all_faces(K))


def test_f_vector_and_faces():
    K = SimplicialComplex([[1, 2, 3], [3, 4]])
    assert K.f_vector == (4, 4, 1)
    assert K.dim == 2
    assert K.faces(1) == [(1, 2), (1, 3), (2, 3), (3, 4)]
    assert K.is_face([1, 3]) and not K.is_face([1, 4])
    assert K.link([3]) == SimplicialComplex([[1, 2], [4]])


def test_stellar_rejects_non_face():
    K = SimplicialComplex([[1, 2], [2, 3]])
    with pytest.raises(ComplexError):
        stellar_subdivision(K, [1, 3], 9)
    with pytest.raises(ComplexError):
        stellar_subdivision(K, [1, 2], 3)


def test_json_format():
    L = build_partition_lattice(3)
    K = nested_set_complex(L, irreducibles(L))
    assert K.to_dict() == {"vertices": ["12|3", "13|2", "1|23"], "facets": [[0], [1], [2]]}


def chain_count(n):
    # maximal chains of the partition lattice
    return factorial(n) * factorial(n - 1) // 2 ** (n - 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_order_complex_of_partition_lattice(n):
    L = build_partition_lattice(n)
    D = order_complex(L)
    assert len(D.vertices) == len(L) - 2
    assert len(D.facets) == chain_count(n)


def test_order_complex_of_boolean_is_barycentric_boundary():
    D = order_complex(build_boolean_lattice(3))
    assert D.f_vector == (6, 6)


def test_nested_complex_pi3_is_three_points():
    L = build_partition_lattice(3)
    K = nested_set_complex(L, irreducibles(L))
    assert K.f_vector == (3,)


def test_petersen():
    L = build_partition_lattice(4)
    K = nested_set_complex(L, irreducibles(L))
    assert K.f_vector == (10, 15)
    adj = {v: set() for v in K.vertices}
    for a, b in K.edges():
        adj[a].add(b)
        adj[b].add(a)
    assert all(len(s) == 3 for s in adj.values())
    # girth via BFS from each vertex
    girth = min(_shortest_cycle(adj, v) for v in adj)
    assert girth == 5


def _shortest_cycle(adj, s):
    dist, parent, queue, best = {s: 0}, {s: None}, [s], 10**9
    for u in queue:
        for w in adj[u]:
            if w not in dist:
                dist[w], parent[w] = dist[u] + 1, u
                queue.append(w)
            elif parent[u] != w:
                best = min(best, dist[u] + dist[w] + 1)
    return best


def test_nested_set_antichain_rule_on_pi4():
    L = build_partition_lattice(4)
    K = nested_set_complex(L, irreducibles(L))
    for f in K.facets:
        blocks = [p.nonsingleton_blocks()[0] for p in f]
        for a, b in itertools.combinations(blocks, 2):
            A, B = set(a), set(b)
            assert A <= B or B <= A or not (A & B)


def test_maximal_building_set_gives_order_complex():
    L = build_partition_lattice(4)
    K = nested_set_complex(L, maximal_building_set(L).members)
    assert K == order_complex(L)


@pytest.mark.parametrize("n,steps", [(3, 0), (4, 3), (5, 25)])
def test_pipeline_ends_in_order_complex(n, steps):
    L = build_partition_lattice(n)
    K, trace = subdivide_to_order_complex(L)
    assert len(trace.steps) == steps
    assert K == order_complex(L)
    assert trace.replay() == K


def test_pipeline_order_is_by_decreasing_rank():
    L = build_partition_lattice(5)
    _, trace = subdivide_to_order_complex(L)
    ranks = [v.rank for _, v in trace.steps]
    assert ranks == sorted(ranks, reverse=True)
    assert all(len(v.nonsingleton_blocks()) >= 2 for _, v in trace.steps)


def test_pipeline_k_equal():
    L = build_k_equal_lattice(6, 3)
    K, _ = subdivide_to_order_complex(L)
    assert K == order_complex(L)


def test_carrier_inverts_steps():
    L = build_partition_lattice(4)
    K, trace = subdivide_to_order_complex(L)
    for f in K.facets:
        car = trace.carrier(f)
        assert trace.start.is_face(car)
    X = SetPartition.parse("12|34")
    assert trace.carrier([X]) == {SetPartition.parse("12|3|4"), SetPartition.parse("1|2|34")}


def test_remark3():
    r = verify_remark3_non_refinement()
    assert r.triangles == 3 and r.edges == 7
    assert r.contains_edge
    assert not r.edge_refined_by_bsd
    assert r.bsd_edges_self_refined
    assert r.passed
