"""
No-broken-circuit bases, decreasing chains and proper nested sets
=================================================================

With the lexicographic atom order on the partition lattice of {1..5}, walk
one nbc basis through the three maps and back.
"""

from __future__ import annotations

from nestedtrees import build_partition_lattice, nbc_bases, phi, psi, theta, verify_bijection_triangle
from nestedtrees.nbc import geometric

L = build_partition_lattice(5)
G = geometric(L)
atom = {L[a].short(): a for a in L.atoms}

basis = [atom[s] for s in ("12", "14", "23", "45")]
chain = psi(G, basis)
print("chain :", " < ".join(L[x].short() for x in chain.chain))
print("labels:", [L[a].short() for a in chain.labels])

S = theta(G, chain)
print("nested set:", sorted(L[m].short() for m in S.members), "proper:", S.proper)
print("back to atoms:", sorted(L[a].short() for a in phi(G, S.members)))

print(len(nbc_bases(G)), "nbc bases in total")
for n in range(3, 7):
    r = verify_bijection_triangle(build_partition_lattice(n))
    print(f"n={n}: |nbc|={r.nbc} |dc|={r.dc} |pn|={r.pn} round trip ok: {r.composite_identity}")
