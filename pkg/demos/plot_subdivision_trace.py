"""
From nested sets to chains by stellar subdivisions
==================================================

Insert the reducible partitions one at a time, largest rank first.  The
last complex is the order complex of the partition lattice.
"""

from __future__ import annotations

from nestedtrees import build_partition_lattice, order_complex, reduced_betti, subdivide_to_order_complex
from nestedtrees.complexes import encode_label

L = build_partition_lattice(5)
K, trace = subdivide_to_order_complex(L)

print(f"{len(trace.steps)} steps")
for i, (face, vertex) in enumerate(trace.steps[:5]):
    print(f"  step {i}: subdivide {sorted(map(encode_label, face))} with new vertex {vertex.short()}")
print("  ...")

print("ends in the order complex:", K == order_complex(L))
print("order complex: %d vertices, %d facets" % (len(K.vertices), len(K.facets)))

# each stellar subdivision is a homeomorphism, so Betti numbers cannot move
betti = {tuple(reduced_betti(C)) for C in trace.intermediates()}
print("Betti numbers seen along the way:", betti)

# a chain in the end complex remembers which tree-complex face carries it
chain = min((f for f in K.facets if any(len(x.nonsingleton_blocks()) > 1 for x in f)), key=lambda f: sorted(map(str, f)))
print("chain", sorted(x.short() for x in chain))
print("  sits in", sorted(x.short() for x in trace.carrier(chain)))
