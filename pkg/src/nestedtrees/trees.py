"""
Rooted leaf-labelled trees and the complexes they span.

A tree type is stored canonically as nested tuples: a leaf is its integer
label, a non-leaf is the tuple of its children sorted by smallest
descendant leaf.  The set of leafsets below the non-root non-leaves is a
complete invariant of the type, and it is also the nested set that names
the corresponding face of the nested set complex.

Rooted trees on n leaves correspond to unrooted trees on n+1 leaves by
attaching a leaf 0 at the root; only the rooted picture is implemented.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Union

from .complexes import ComplexError, SimplicialComplex, complexes_equal, nested_set_complex
from .lattice import SetPartition, build_partition_lattice, irreducibles

Node = Union[int, tuple]


def _canon(node) -> Node:
    if isinstance(node, int):
        return node
    kids = [_canon(c) for c in node]
    return tuple(sorted(kids, key=_min_leaf))


def _min_leaf(node: Node) -> int:
    return node if isinstance(node, int) else min(_min_leaf(c) for c in node)


def _leafset(node: Node) -> frozenset[int]:
    if isinstance(node, int):
        return frozenset((node,))
    return frozenset().union(*(_leafset(c) for c in node))


@dataclass(frozen=True)
class RootedTree:
    """Combinatorial type of a rooted tree with labelled leaves."""

    root: tuple

    def __post_init__(self):
        if isinstance(self.root, int):
            raise ComplexError("a rooted tree needs a non-leaf root")
        object.__setattr__(self, "root", _canon(self.root))
        for node in self.nonleaves():
            if len(node) < 2:
                raise ComplexError("every non-leaf needs outdegree at least 2")

    @classmethod
    def parse(cls, text: str) -> "RootedTree":
        """Read ``"((1,2),(3,4))"``; the outermost parentheses are the root."""
        pos = 0
        s = text.replace(" ", "")

        def node():
            nonlocal pos
            if s[pos] == "(":
                pos += 1
                kids = [node()]
                while s[pos] == ",":
                    pos += 1
                    kids.append(node())
                if s[pos] != ")":
                    raise ComplexError(f"unbalanced tree string {text!r}")
                pos += 1
                return tuple(kids)
            start = pos
            while pos < len(s) and s[pos].isdigit():
                pos += 1
            if start == pos:
                raise ComplexError(f"bad tree string {text!r}")
            return int(s[start:pos])

        root = node()
        if pos != len(s):
            raise ComplexError(f"trailing characters in {text!r}")
        return cls(root)

    def __str__(self) -> str:
        def fmt(node):
            return str(node) if isinstance(node, int) else "(" + ",".join(map(fmt, node)) + ")"

        return fmt(self.root)

    @property
    def leaves(self) -> frozenset[int]:
        return _leafset(self.root)

    @property
    def n(self) -> int:
        return len(self.leaves)

    def nonleaves(self) -> Iterator[tuple]:
        """Root first, then the internal vertices in depth-first order."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(c for c in reversed(node) if not isinstance(c, int))

    def internal_nodes(self) -> list[tuple]:
        return [v for v in self.nonleaves() if v is not self.root]

    def outdegrees(self) -> list[int]:
        return [len(v) for v in self.nonleaves()]

    def leafsets(self, include_root: bool = False) -> list[frozenset[int]]:
        nodes = self.nonleaves() if include_root else self.internal_nodes()
        return [_leafset(v) for v in nodes]

    @property
    def is_binary(self) -> bool:
        return all(d == 2 for d in self.outdegrees())

    def preleaves(self) -> list[tuple]:
        return [v for v in self.nonleaves() if all(isinstance(c, int) for c in v)]

    def contract(self, leafset: Iterable[int]) -> "RootedTree":
        """Contract the internal edge above the vertex with the given leafset."""
        target = frozenset(leafset)

        def rec(node):
            if isinstance(node, int):
                return node
            kids = []
            for c in node:
                if not isinstance(c, int) and _leafset(c) == target:
                    kids.extend(rec(g) for g in c)
                else:
                    kids.append(rec(c))
            return tuple(kids)

        if target not in set(self.leafsets()):
            raise ComplexError(f"no internal vertex with leafset {sorted(target)}")
        return RootedTree(rec(self.root))


def tree_to_nested(T: RootedTree) -> frozenset[frozenset[int]]:
    """Leafsets of the internal vertices other than the root."""
    return frozenset(T.leafsets())


def nested_to_tree(S: Iterable[Iterable[int]], n: int) -> RootedTree:
    """Grow the tree of a laminar family of subsets of ``{1..n}``.

    Members become internal vertices, each covering the maximal members
    strictly inside it and carrying the uncovered elements as leaves; the
    root does the same for ``{1..n}``.
    """
    members = [frozenset(s) for s in S]
    ground = frozenset(range(1, n + 1))
    if len(set(members)) != len(members):
        raise ComplexError("repeated member")
    for m in members:
        if len(m) < 2 or not m < ground:
            raise ComplexError(f"{sorted(m)} is not a proper subset of size >= 2")
    for a, b in itertools.combinations(members, 2):
        if a & b and not (a <= b or b <= a):
            raise ComplexError(f"{sorted(a)} and {sorted(b)} overlap: not nested")

    def grow(A):
        inside = [m for m in members if m < A]
        kids = [m for m in inside if not any(m < o for o in inside)]
        covered = frozenset().union(*kids)
        return tuple([grow(k) for k in kids] + sorted(A - covered))

    return RootedTree(grow(ground))


# ---------------------------------------------------------------------------
# enumeration


def _splits(items: tuple[int, ...], parts: int, size_ok: Callable[[int], bool]) -> Iterator[list[tuple[int, ...]]]:
    """Set partitions of ``items`` into exactly ``parts`` blocks with admissible sizes."""
    if parts == 0:
        if not items:
            yield []
        return
    if len(items) < parts:
        return
    first, rest = items[0], items[1:]
    for r in range(len(rest) + 1):
        if not size_ok(r + 1):
            continue
        for comb in itertools.combinations(rest, r):
            block = (first,) + comb
            remaining = tuple(x for x in rest if x not in comb)
            for tail in _splits(remaining, parts - 1, size_ok):
                yield [block] + tail


def _regular_trees(leaves: tuple[int, ...], arity: int, size_ok) -> Iterator[Node]:
    if len(leaves) == 1:
        yield leaves[0]
        return
    for blocks in _splits(leaves, arity, size_ok):
        for kids in itertools.product(*(list(_regular_trees(b, arity, size_ok)) for b in blocks)):
            yield tuple(kids)


def binary_trees(n: int) -> Iterator[RootedTree]:
    """Binary rooted tree types on leaves ``1..n``."""
    for root in _regular_trees(tuple(range(1, n + 1)), 2, lambda s: True):
        yield RootedTree(root)


def hanlon_facet_trees(n: int, k: int) -> Iterator[RootedTree]:
    """(k+1)-ary rooted trees on ``(n-1)k+1`` leaves: the facets of the k-tree complex."""
    N = (n - 1) * k + 1
    for root in _regular_trees(tuple(range(1, N + 1)), k + 1, lambda s: s % k == 1 % k):
        yield RootedTree(root)


def k_equal_facet_trees(n: int, k: int) -> Iterator[RootedTree]:
    """Trees binary everywhere except at preleaves, which carry exactly ``k`` leaves."""

    def trees(A: tuple[int, ...]) -> list[Node]:
        out: list[Node] = []
        if len(A) == k:
            out.append(A)
        first, rest = A[0], A[1:]
        for r in range(len(rest)):
            for comb in itertools.combinations(rest, r):
                B = (first,) + comb
                C = tuple(x for x in rest if x not in comb)
                if len(B) == 1 and len(C) == 1:
                    continue
                if not all(len(P) == 1 or len(P) >= k for P in (B, C)):
                    continue
                left = [B[0]] if len(B) == 1 else trees(B)
                right = [C[0]] if len(C) == 1 else trees(C)
                out.extend((x, y) for x in left for y in right)
        return out

    for root in trees(tuple(range(1, n + 1))):
        if not isinstance(root, int):
            yield RootedTree(root)


def _complex_of(trees: Iterable[RootedTree]) -> SimplicialComplex:
    return SimplicialComplex(tree_to_nested(T) for T in trees)


def enumerate_tn(n: int) -> SimplicialComplex:
    """The complex of trees on ``n`` leaves; vertices are leafsets (frozensets)."""
    if n < 3:
        raise ComplexError(f"the complex of trees needs n >= 3, got {n}")
    return _complex_of(binary_trees(n))


def enumerate_hanlon_k_trees(n: int, k: int) -> SimplicialComplex:
    """Complex of k-trees: outdegrees >= k+1 and = 1 mod k, at least one internal edge."""
    if n < 3 or k < 1:
        raise ComplexError(f"k-tree complex needs n >= 3 and k >= 1, got n={n}, k={k}")
    return _complex_of(hanlon_facet_trees(n, k))


def enumerate_k_equal_trees(n: int, k: int) -> SimplicialComplex:
    """Complex of k-equal trees on ``n`` leaves."""
    if not n > k >= 2:
        raise ComplexError(f"k-equal tree complex needs n > k >= 2, got n={n}, k={k}")
    return _complex_of(k_equal_facet_trees(n, k))


def leafset_to_partition(n: int) -> Callable[[frozenset[int]], SetPartition]:
    """Vertex label map from tree leafsets to single-block partitions."""
    return lambda s: SetPartition.single_block(s, n)


def verify_tn_identity(n: int) -> bool:
    """Compare the tree complex with the reduced minimal nested set complex of the partition lattice."""
    if not 3 <= n <= 6:
        raise ComplexError(f"n must lie in 3..6, got {n}")
    L = build_partition_lattice(n)
    N = nested_set_complex(L, irreducibles(L), reduced=True)
    return complexes_equal(enumerate_tn(n), N, leafset_to_partition(n))
