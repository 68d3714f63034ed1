"""
k-equal trees and k-trees
=========================

Trees whose preleaves carry exactly k leaves span the nested set complex of
the k-equal lattice.  The k-tree complexes are compared with order complexes
of the posets of partitions with block sizes 1 mod k.
"""

from __future__ import annotations

from nestedtrees import (
    build_block_size_poset,
    build_k_equal_lattice,
    enumerate_hanlon_k_trees,
    enumerate_k_equal_trees,
    order_complex,
    reduced_betti,
    subdivide_to_order_complex,
)

for n in (5, 6):
    L = build_k_equal_lattice(n, 3)
    T = enumerate_k_equal_trees(n, 3)
    K, trace = subdivide_to_order_complex(L)
    print(f"Pi_{{{n},3}}: {len(L)} elements, tree complex f-vector {T.f_vector}")
    print("  Betti (trees, chains):", reduced_betti(T), reduced_betti(K))

for n, k in ((3, 2), (4, 2)):
    N = (n - 1) * k + 1
    a = reduced_betti(enumerate_hanlon_k_trees(n, k))
    b = reduced_betti(order_complex(build_block_size_poset(N, k)))
    print(f"T_{n}^({k}) {a}  vs  Pi_{N}^({k}) {b}")
