"""
Admissible trees and top cohomology
===================================

A binary tree is admissible when the second smallest leaves below its
non-leaves are 2, ..., n.  Their indicator cochains pair with a basis of
top cycles in an invertible matrix.
"""

from __future__ import annotations

from math import factorial

from nestedtrees import admissible_trees, enumerate_tn, top_cycle_basis
from nestedtrees.homology import rank
from nestedtrees.nbc import admissible_evaluation_matrix

for T in admissible_trees(4):
    print(T)

n = 5
Z = top_cycle_basis(enumerate_tn(n))
print("top cycles of T_5:", Z.shape[1])

E = admissible_evaluation_matrix(n)
print("evaluation matrix", E.shape, "rank", rank(E), "expected", factorial(n - 1))
