"""
The complex of trees as a nested set complex
============================================

Build the complex of rooted trees on 4 leaves, compare it with the nested
set complex of the partition lattice, and look at its homology.
"""

from __future__ import annotations

from nestedtrees import (
    build_partition_lattice,
    complexes_equal,
    enumerate_tn,
    irreducibles,
    nested_set_complex,
    reduced_betti,
)
from nestedtrees.trees import leafset_to_partition

n = 4
T = enumerate_tn(n)
print(f"T_{n}: f-vector {T.f_vector}")

# The irreducible elements of the partition lattice are the partitions with
# one nonsingleton block, so they correspond to the leafsets of inner vertices.
L = build_partition_lattice(n)
I = irreducibles(L)
print(f"Pi_{n}: {len(L)} elements, {len(I)} irreducible")

N = nested_set_complex(L, I)
print("same complex:", complexes_equal(T, N, leafset_to_partition(n)))

# For n = 4 it is a graph, and every vertex has three neighbours.
degree = {v: 0 for v in N.vertices}
for a, b in N.edges():
    degree[a] += 1
    degree[b] += 1
print("degrees:", sorted(set(degree.values())))

for m in range(3, 7):
    print(f"reduced Betti numbers of T_{m}:", reduced_betti(enumerate_tn(m)))
