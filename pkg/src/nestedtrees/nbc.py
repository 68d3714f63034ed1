"""
Geometric lattices with an atom order: EL-labels, broken circuits, no
broken circuit bases, decreasing chains, proper maximal nested sets, the
maps between them, support simplices and admissible trees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from .complexes import label_key, nested_sets
from .homology import rank as matrix_rank
from .homology import top_cycle_basis
from .lattice import FiniteLattice, LatticeError, SetPartition, UnsupportedOperation, factors, irreducibles
from .trees import RootedTree, binary_trees, enumerate_tn, tree_to_nested


def _default_atom_key(L: FiniteLattice):
    def key(a):
        p = L[a]
        if isinstance(p, SetPartition):
            return (0, p.nonsingleton_blocks())
        return (1, label_key(p))

    return key


class AtomOrderedGeometricLattice:
    """A lattice certified geometric (atomic and semimodular) with a total order on atoms.

    ``omega`` lists the atoms from smallest to largest; by default set
    partition atoms ``ij`` are ordered lexicographically on the pair.
    """

    def __init__(self, lattice: FiniteLattice, omega: Sequence[int] | None = None):
        lattice._require_lattice()
        self.lattice = lattice
        atoms = lattice.atoms
        if omega is None:
            omega = sorted(atoms, key=_default_atom_key(lattice))
        omega = tuple(int(a) for a in omega)
        if sorted(omega) != sorted(atoms):
            raise LatticeError("omega must order exactly the atoms")
        self.omega = omega
        self.pos = {a: i for i, a in enumerate(omega)}
        self.is_atomic = self._atomic()
        self.is_semimodular = self._semimodular()
        if not (self.is_atomic and self.is_semimodular):
            raise UnsupportedOperation(f"{lattice!r} is not a geometric lattice")

    def __repr__(self) -> str:
        return f"<AtomOrderedGeometricLattice {self.lattice.name or len(self.lattice)} rank={self.rank}>"

    def _atomic(self) -> bool:
        L = self.lattice
        return all(L.join_all(self.floor(x)) == x for x in range(len(L)))

    def _semimodular(self) -> bool:
        L = self.lattice
        cov = L._cover_matrix
        J, M = L.join_table, L.meet_table
        X = np.arange(len(L))[:, None]
        Y = np.arange(len(L))[None, :]
        premise = cov[M, np.broadcast_to(X, M.shape)]
        conclusion = cov[np.broadcast_to(Y, J.shape), J]
        return bool((~premise | conclusion).all())

    @property
    def rank(self) -> int:
        return int(self.lattice.rank[self.lattice.top])

    def floor(self, x: int) -> frozenset[int]:
        """Atoms below ``x``."""
        return frozenset(a for a in self.lattice.atoms if self.lattice.leq[a, x])

    def omega_min(self, atoms: Iterable[int]) -> int:
        return min(atoms, key=self.pos.__getitem__)

    def sort_atoms(self, atoms: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(atoms, key=self.pos.__getitem__))

    def atom_rank(self, atoms: Iterable[int]) -> int:
        L = self.lattice
        return int(L.rank[L.join_all(atoms)])

    def is_independent(self, atoms: Sequence[int]) -> bool:
        return len(set(atoms)) == len(atoms) and self.atom_rank(atoms) == len(atoms)

    def is_basis(self, atoms: Sequence[int]) -> bool:
        return len(atoms) == self.rank and self.is_independent(atoms)

    def label(self, x: int, y: int) -> int:
        """EL-label of the cover ``x > y``: the smallest atom below x but not below y."""
        return self.omega_min(self.floor(x) - self.floor(y))

    @cached_property
    def irreducibles(self) -> frozenset[int]:
        return irreducibles(self.lattice)


def geometric(L, omega: Sequence[int] | None = None) -> AtomOrderedGeometricLattice:
    if isinstance(L, AtomOrderedGeometricLattice):
        return L if omega is None else AtomOrderedGeometricLattice(L.lattice, omega)
    return AtomOrderedGeometricLattice(L, omega)


@dataclass(frozen=True)
class LabeledChain:
    """Maximal chain ``0 < c_1 < ... < 1`` (indices, ends included) with its EL-labels."""

    chain: tuple[int, ...]
    labels: tuple[int, ...]

    def is_decreasing(self, G: AtomOrderedGeometricLattice) -> bool:
        p = [G.pos[a] for a in self.labels]
        return all(a > b for a, b in zip(p, p[1:]))


def labeled_chain(G: AtomOrderedGeometricLattice, chain: Sequence[int]) -> LabeledChain:
    chain = tuple(int(c) for c in chain)
    return LabeledChain(chain, tuple(G.label(y, x) for x, y in zip(chain, chain[1:])))


@dataclass(frozen=True)
class MaximalNestedSet:
    """Facet of the unreduced minimal nested set complex with its atom images."""

    members: frozenset[int]
    phi_image: tuple[int, ...]
    proper: bool

    def reduced(self, L: FiniteLattice) -> frozenset[int]:
        return self.members - {L.top}


# ---------------------------------------------------------------------------
# matroid data


def circuits_and_broken_circuits(L, omega=None) -> tuple[list[frozenset[int]], list[frozenset[int]]]:
    """Minimal dependent atom sets, and each one minus its smallest atom."""
    G = geometric(L, omega)
    atoms = G.omega
    circuits: list[frozenset[int]] = []
    independent = {frozenset()}
    for s in range(1, G.rank + 2):
        next_indep = set()
        for comb in itertools.combinations(atoms, s):
            fs = frozenset(comb)
            if G.atom_rank(comb) == s:
                next_indep.add(fs)
            elif all(fs - {a} in independent for a in comb):
                circuits.append(fs)
        independent = next_indep
    broken = [c - {G.omega_min(c)} for c in circuits]
    return circuits, broken


def nbc_bases(L, omega=None) -> list[tuple[int, ...]]:
    """Bases containing no broken circuit, each sorted by the atom order."""
    G = geometric(L, omega)
    _, broken = circuits_and_broken_circuits(G)
    out = []
    for comb in itertools.combinations(G.omega, G.rank):
        if G.is_independent(comb):
            fs = frozenset(comb)
            if not any(b <= fs for b in broken):
                out.append(comb)
    return out


def decreasing_chains(L, omega=None) -> list[LabeledChain]:
    """Maximal chains whose label sequence strictly decreases in the atom order."""
    G = geometric(L, omega)
    lat = G.lattice
    out: list[LabeledChain] = []
    chain, labels = [lat.bottom], []

    def rec(x):
        if x == lat.top:
            out.append(LabeledChain(tuple(chain), tuple(labels)))
            return
        for y in lat.upper_covers[x]:
            lab = G.label(y, x)
            if labels and G.pos[lab] >= G.pos[labels[-1]]:
                continue
            chain.append(y)
            labels.append(lab)
            rec(y)
            chain.pop()
            labels.pop()

    rec(lat.bottom)
    return out


# ---------------------------------------------------------------------------
# the three maps


def psi(L, basis: Iterable[int], omega=None) -> LabeledChain:
    """Chain of suffix joins ``0 < a_r < a_r v a_{r-1} < ... < 1`` of an ordered basis."""
    G = geometric(L, omega)
    b = G.sort_atoms(basis)
    if not G.is_basis(b):
        raise LatticeError("psi needs a basis")
    lat = G.lattice
    chain = [lat.bottom]
    for a in reversed(b):
        chain.append(lat.join(chain[-1], a))
    return labeled_chain(G, chain)


def theta(L, c: LabeledChain | Sequence[int], omega=None) -> MaximalNestedSet:
    """Union of the irreducible factors of every chain element above the bottom."""
    G = geometric(L, omega)
    if not isinstance(c, LabeledChain):
        c = labeled_chain(G, c)
    if not c.is_decreasing(G):
        raise LatticeError("theta needs a chain with decreasing labels")
    members = frozenset().union(*(factors(G.lattice, G.irreducibles, x) for x in c.chain[1:]))
    return nested_set_record(G, members)


def phi(L, members: Iterable[int], omega=None) -> tuple[int, ...]:
    """Smallest atom below each member, listed in member index order."""
    G = geometric(L, omega)
    return tuple(G.omega_min(G.floor(m)) for m in sorted(members))


def nested_set_record(G: AtomOrderedGeometricLattice, members: Iterable[int]) -> MaximalNestedSet:
    members = frozenset(members)
    img = phi(G, members)
    return MaximalNestedSet(members, img, G.is_basis(tuple(set(img))))


def maximal_nested_sets(L, omega=None) -> list[MaximalNestedSet]:
    """Facets of the unreduced minimal nested set complex, each with its phi image."""
    G = geometric(L, omega)
    faces = {frozenset(f) for f in nested_sets(G.lattice, G.irreducibles)}
    members = sorted(G.irreducibles)
    facets = [f for f in faces if not any(f | {m} in faces for m in members if m not in f)]
    facets.sort(key=sorted)
    return [nested_set_record(G, f) for f in facets]


def proper_nested_sets(L, omega=None) -> list[MaximalNestedSet]:
    return [S for S in maximal_nested_sets(L, omega) if S.proper]


@dataclass
class BijectionReport:
    nbc: int
    dc: int
    pn: int
    psi_bijective: bool
    theta_bijective: bool
    composite_identity: bool
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.psi_bijective
            and self.theta_bijective
            and self.composite_identity
            and self.nbc == self.dc == self.pn
        )

    @property
    def cardinality(self) -> int:
        return self.nbc

    def to_dict(self) -> dict:
        return {**self.__dict__, "passed": self.passed}


def verify_bijection_triangle(L, omega=None) -> BijectionReport:
    """Check that psi and theta are bijections and phi o theta o psi is the identity."""
    G = geometric(L, omega)
    nbc = nbc_bases(G)
    dc = decreasing_chains(G)
    pn = proper_nested_sets(G)
    dc_set = {c.chain for c in dc}
    pn_set = {S.members for S in pn}
    bad = []

    psi_img = [psi(G, b).chain for b in nbc]
    psi_ok = set(psi_img) == dc_set and len(set(psi_img)) == len(psi_img)
    theta_img = [theta(G, c).members for c in dc]
    theta_ok = set(theta_img) == pn_set and len(set(theta_img)) == len(theta_img)
    ident = True
    for b in nbc:
        back = G.sort_atoms(set(phi(G, theta(G, psi(G, b)).members)))
        if back != G.sort_atoms(b):
            ident = False
            bad.append({"basis": [str(G.lattice[a]) for a in b], "image": [str(G.lattice[a]) for a in back]})
    return BijectionReport(len(nbc), len(dc), len(pn), psi_ok, theta_ok, ident, bad)


# ---------------------------------------------------------------------------
# support simplices and admissible trees


def _check_maximal_proper_chain(L: FiniteLattice, c: Sequence[int]):
    full = [L.bottom, *c, L.top]
    if not all(L.covers(x, y) for x, y in zip(full, full[1:])):
        raise LatticeError("not a maximal chain of the proper part")


def support_simplex(L: FiniteLattice, c: Sequence[int], I: Iterable[int] | None = None) -> frozenset[int]:
    """Facet of the reduced minimal nested set complex carrying the maximal chain ``c``.

    ``c`` lists the proper-part chain elements bottom-up (indices).
    """
    c = [int(x) for x in c]
    _check_maximal_proper_chain(L, c)
    I = irreducibles(L) if I is None else frozenset(I)
    return frozenset().union(*(factors(L, I, x) for x in c))


def second_smallest_labels(T: RootedTree) -> list[int]:
    return [sorted(s)[1] for s in T.leafsets(include_root=True)]


def is_admissible(T: RootedTree) -> bool:
    labels = second_smallest_labels(T)
    return T.is_binary and sorted(labels) == list(range(2, T.n + 1))


def admissible_trees(n: int) -> list[RootedTree]:
    """Binary trees whose non-leaves have second-smallest leaf labels 2..n, once each."""
    return sorted((T for T in binary_trees(n) if is_admissible(T)), key=str)


def admissible_evaluation_matrix(n: int) -> np.ndarray:
    """Values of the admissible facets' indicator cochains on a top cycle basis of the tree complex."""
    K = enumerate_tn(n)
    basis = top_cycle_basis(K)
    row = {frozenset(f): i for i, f in enumerate(K.faces(K.dim))}
    rows = [row[tree_to_nested(T)] for T in admissible_trees(n)]
    return basis[rows, :]


def verify_admissible_basis(n: int, max_n: int = 5) -> bool:
    """True iff the admissible evaluation matrix is square of full rank (n-1)!."""
    if not 3 <= n <= max_n:
        raise LatticeError(f"n must lie in 3..{max_n}, got {n}")
    E = admissible_evaluation_matrix(n)
    target = factorial(n - 1)
    return E.shape == (target, target) and matrix_rank(E) == target
