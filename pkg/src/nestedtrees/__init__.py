"""Complexes of trees, nested set complexes of partition-type lattices, and
exact checks relating them (subdivisions, homology, nbc bases)."""

from .complexes import (
    SimplicialComplex,
    SubdivisionTrace,
    barycentric_subdivision,
    complexes_equal,
    nested_set_complex,
    order_complex,
    stellar_subdivision,
    subdivide_to_order_complex,
    verify_remark3_non_refinement,
)
from .homology import boundary_matrix, reduced_betti, top_cycle_basis
from .lattice import (
    BuildingSet,
    FiniteLattice,
    SetPartition,
    build_block_size_poset,
    build_boolean_lattice,
    build_k_equal_lattice,
    build_partition_lattice,
    factors,
    irreducibles,
    is_building_set,
)
from .nbc import (
    admissible_trees,
    circuits_and_broken_circuits,
    decreasing_chains,
    geometric,
    nbc_bases,
    phi,
    psi,
    support_simplex,
    theta,
    verify_admissible_basis,
    verify_bijection_triangle,
)
from .trees import (
    RootedTree,
    enumerate_hanlon_k_trees,
    enumerate_k_equal_trees,
    enumerate_tn,
    nested_to_tree,
    tree_to_nested,
    verify_tn_identity,
)

__version__ = "0.1.0"
