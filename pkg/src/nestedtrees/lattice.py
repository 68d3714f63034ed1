"""
Finite lattices and posets, set partitions, building sets and factors.

Lattices are materialized: every element carries a payload (usually a
:class:`SetPartition`), the order relation is a boolean matrix, and joins
and meets are looked up in tables that are filled one row at a time on
first use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

DEFAULT_SIZE_CAP = 8


class LatticeError(ValueError):
    """Raised for invalid lattice parameters or arguments."""


class UnsupportedOperation(LatticeError):
    """Raised when a lattice-only operation is applied to a bare poset."""


# ---------------------------------------------------------------------------
# set partitions


def encode_subset(block: Iterable[int], n: int | None = None) -> str:
    """Canonical string for a subset of ``{1..n}``: ``"145"``, or ``"3,10"`` when labels exceed 9."""
    items = sorted(block)
    wide = (n is not None and n > 9) or (items and items[-1] > 9)
    return ("," if wide else "").join(map(str, items))


@dataclass(frozen=True, order=True)
class SetPartition:
    """A set partition of ``{1..n}`` in canonical form.

    Blocks are sorted tuples, and the block tuple is sorted by block minimum.
    Construct through :meth:`from_blocks` unless the blocks are already
    canonical.
    """

    blocks: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        seen = [x for b in self.blocks for x in b]
        if sorted(seen) != list(range(1, self.n + 1)):
            raise LatticeError(f"blocks {self.blocks} do not partition 1..{self.n}")
        if any(not b or list(b) != sorted(b) for b in self.blocks):
            raise LatticeError("blocks must be nonempty and sorted")
        if [b[0] for b in self.blocks] != sorted(b[0] for b in self.blocks):
            raise LatticeError("blocks must be ordered by their minimum")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "SetPartition":
        """Canonicalize ``blocks``; missing elements of ``{1..n}`` become singletons."""
        bl = [tuple(sorted(set(b))) for b in blocks]
        bl = [b for b in bl if b]
        if n is None:
            n = max((x for b in bl for x in b), default=0)
        covered = {x for b in bl for x in b}
        bl.extend((x,) for x in range(1, n + 1) if x not in covered)
        return cls(tuple(sorted(bl)), n)

    @classmethod
    def bottom(cls, n: int) -> "SetPartition":
        return cls(tuple((i,) for i in range(1, n + 1)), n)

    @classmethod
    def top(cls, n: int) -> "SetPartition":
        return cls((tuple(range(1, n + 1)),), n)

    @classmethod
    def single_block(cls, block: Iterable[int], n: int) -> "SetPartition":
        """The partition whose only non-singleton block is ``block``."""
        return cls.from_blocks([block], n)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "SetPartition":
        """Parse ``"1|23|45"`` (or the short form ``"23|45"`` together with ``n``).

        Blocks with commas (``"1,10|2"``) are read element-wise; otherwise
        every digit is an element.
        """
        text = text.strip()
        if text in ("0", ""):
            if n is None:
                raise LatticeError("n is required to parse the bottom element")
            return cls.bottom(n)
        blocks = []
        for part in text.split("|"):
            if "," in part:
                blocks.append([int(x) for x in part.split(",")])
            else:
                blocks.append([int(ch) for ch in part])
        return cls.from_blocks(blocks, n)

    def __str__(self) -> str:
        return "|".join(encode_subset(b, self.n) for b in self.blocks)

    def short(self) -> str:
        """Singletons dropped, as in ``23|145``; the bottom element prints as ``0``."""
        big = [encode_subset(b, self.n) for b in self.blocks if len(b) > 1]
        return "|".join(big) if big else "0"

    @property
    def rank(self) -> int:
        return self.n - len(self.blocks)

    def nonsingleton_blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b for b in self.blocks if len(b) > 1)

    def refines(self, other: "SetPartition") -> bool:
        """``self <= other`` in reversed refinement order."""
        where = other.block_of()
        return all(len({where[x] for x in b}) == 1 for b in self.blocks)

    def block_of(self) -> dict[int, int]:
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def join(self, other: "SetPartition") -> "SetPartition":
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for b in itertools.chain(self.blocks, other.blocks):
            r = find(b[0])
            for x in b[1:]:
                parent[find(x)] = r
        groups: dict[int, list[int]] = {}
        for x in range(1, self.n + 1):
            groups.setdefault(find(x), []).append(x)
        return SetPartition.from_blocks(groups.values(), self.n)

    def meet(self, other: "SetPartition") -> "SetPartition":
        where = other.block_of()
        groups: dict[tuple[int, int], list[int]] = {}
        for i, b in enumerate(self.blocks):
            for x in b:
                groups.setdefault((i, where[x]), []).append(x)
        return SetPartition.from_blocks(groups.values(), self.n)


def set_partitions(n: int) -> Iterator[SetPartition]:
    """All set partitions of ``{1..n}`` via restricted growth strings."""
    if n == 0:
        return
    growth = [0] * n

    def rec(i, m):
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(m + 1)]
            for x, g in enumerate(growth, start=1):
                blocks[g].append(x)
            yield SetPartition(tuple(map(tuple, blocks)), n)
            return
        for g in range(m + 2):
            growth[i] = g
            yield from rec(i + 1, max(m, g))

    growth[0] = 0
    yield from rec(1, 0)


# ---------------------------------------------------------------------------
# lattices


class FiniteLattice:
    """A finite poset with element payloads, usually a lattice.

    ``leq[i, j]`` is true iff element ``i`` is below element ``j``.  If
    ``is_lattice`` is false the object is a bare poset and join/meet raise
    :class:`UnsupportedOperation`.  ``rank`` defaults to the length of the
    longest chain from a minimal element up to each element.
    """

    def __init__(
        self,
        elements: Sequence[Hashable],
        leq: np.ndarray,
        rank: Sequence[int] | None = None,
        *,
        is_lattice: bool = True,
        name: str = "",
    ):
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise LatticeError("duplicate element payloads")
        leq = np.array(leq, dtype=bool)
        if leq.shape != (len(self), len(self)):
            raise LatticeError("order matrix has the wrong shape")
        leq.setflags(write=False)
        self.leq = leq
        self.is_lattice = is_lattice
        self.name = name

        bottoms = np.flatnonzero(leq.all(axis=1))
        tops = np.flatnonzero(leq.all(axis=0))
        self.bottom = int(bottoms[0]) if len(bottoms) else None
        self.top = int(tops[0]) if len(tops) else None
        if is_lattice and (self.bottom is None or self.top is None):
            raise LatticeError("a finite lattice needs a bottom and a top")

        if rank is None:
            rank = self._heights()
        self.rank = np.asarray(rank, dtype=np.int64)
        self.rank.setflags(write=False)
        self._join_rows: dict[int, np.ndarray] = {}
        self._meet_rows: dict[int, np.ndarray] = {}

    @classmethod
    def from_order(
        cls,
        elements: Sequence[Hashable],
        le: Callable[[Hashable, Hashable], bool],
        **kwargs,
    ) -> "FiniteLattice":
        """Build from a payload comparison function ``le(a, b)``."""
        leq = np.array([[le(a, b) for b in elements] for a in elements], dtype=bool)
        return cls(elements, leq, **kwargs)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        kind = "FiniteLattice" if self.is_lattice else "FinitePoset"
        label = f" {self.name}" if self.name else ""
        return f"<{kind}{label} with {len(self)} elements>"

    def __getitem__(self, i: int) -> Hashable:
        return self.elements[i]

    def index(self, payload: Hashable) -> int:
        try:
            return self._index[payload]
        except KeyError:
            raise LatticeError(f"{payload} is not an element of {self!r}") from None

    def __contains__(self, payload) -> bool:
        return payload in self._index

    def _heights(self) -> np.ndarray:
        below = self.leq.sum(axis=0)
        h = np.zeros(len(self), dtype=np.int64)
        for x in np.argsort(below, kind="stable"):
            lower = np.flatnonzero(self.leq[:, x])
            lower = lower[lower != x]
            if len(lower):
                h[x] = h[lower].max() + 1
        return h

    # -- order queries -----------------------------------------------------

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.leq[x, y])

    def below(self, x: int) -> np.ndarray:
        """Indices of the lower interval ``[0, x]``."""
        return np.flatnonzero(self.leq[:, x])

    def above(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.leq[x, :])

    def interval(self, x: int, y: int) -> np.ndarray:
        return np.flatnonzero(self.leq[x, :] & self.leq[:, y])

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        if self.bottom is None:
            return ()
        return tuple(int(a) for a in self.upper_covers[self.bottom])

    @cached_property
    def _cover_matrix(self) -> np.ndarray:
        strict = self.leq & ~np.eye(len(self), dtype=bool)
        s = strict.astype(np.float32)
        return strict & ~((s @ s) > 0)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        cov = self._cover_matrix
        return tuple(tuple(int(j) for j in np.flatnonzero(cov[i])) for i in range(len(self)))

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        cov = self._cover_matrix
        return tuple(tuple(int(j) for j in np.flatnonzero(cov[:, i])) for i in range(len(self)))

    def covers(self, x: int, y: int) -> bool:
        """True iff ``y`` covers ``x``."""
        return bool(self._cover_matrix[x, y])

    def proper_part(self) -> list[int]:
        skip = {self.bottom, self.top}
        return [i for i in range(len(self)) if i not in skip]

    def maximal_chains(self, start: int | None = None, end: int | None = None) -> Iterator[tuple[int, ...]]:
        """Maximal chains from ``start`` (default bottom) to ``end`` (default top)."""
        start = self.bottom if start is None else start
        end = self.top if end is None else end
        if start is None or end is None:
            raise UnsupportedOperation("poset has no bottom/top; pass start and end")
        up = self.upper_covers
        path = [start]

        def rec(x):
            if x == end:
                yield tuple(path)
                return
            for y in up[x]:
                if self.leq[y, end]:
                    path.append(y)
                    yield from rec(y)
                    path.pop()

        yield from rec(start)

    def maximal(self, subset: Iterable[int]) -> list[int]:
        """Maximal elements of ``subset``, ascending by index."""
        s = np.array(sorted(set(subset)), dtype=np.int64)
        if not len(s):
            return []
        sub = self.leq[np.ix_(s, s)] & ~np.eye(len(s), dtype=bool)
        return [int(x) for x in s[~sub.any(axis=1)]]

    # -- lattice operations ------------------------------------------------

    def _require_lattice(self):
        if not self.is_lattice:
            raise UnsupportedOperation(f"{self!r} is a poset, not a lattice")

    def join_row(self, x: int) -> np.ndarray:
        self._require_lattice()
        row = self._join_rows.get(x)
        if row is None:
            common = self.leq[x][None, :] & self.leq
            big = np.iinfo(np.int64).max
            row = np.where(common, self.rank[None, :], big).argmin(axis=1)
            row.setflags(write=False)
            self._join_rows[x] = row
        return row

    def meet_row(self, x: int) -> np.ndarray:
        self._require_lattice()
        row = self._meet_rows.get(x)
        if row is None:
            common = self.leq[:, x][None, :] & self.leq.T
            row = np.where(common, self.rank[None, :], -1).argmax(axis=1)
            row.setflags(write=False)
            self._meet_rows[x] = row
        return row

    def join(self, x: int, y: int) -> int:
        return int(self.join_row(x)[y])

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_row(x)[y])

    def join_all(self, xs: Iterable[int]) -> int:
        self._require_lattice()
        acc = self.bottom
        for x in xs:
            acc = self.join(acc, x)
        return acc

    @property
    def join_table(self) -> np.ndarray:
        return np.stack([self.join_row(x) for x in range(len(self))])

    @property
    def meet_table(self) -> np.ndarray:
        return np.stack([self.meet_row(x) for x in range(len(self))])

    def validate(self) -> None:
        """Check the partial order axioms and, for lattices, the join/meet tables."""
        leq = self.leq
        if not leq.diagonal().all():
            raise LatticeError("order is not reflexive")
        if (leq & leq.T & ~np.eye(len(self), dtype=bool)).any():
            raise LatticeError("order is not antisymmetric")
        li = leq.astype(np.float32)
        if (((li @ li) > 0) & ~leq).any():
            raise LatticeError("order is not transitive")
        if not self.is_lattice:
            return
        for x in range(len(self)):
            j, m = self.join_row(x), self.meet_row(x)
            ub = leq[x][None, :] & leq
            if not (leq[x, j] & leq[np.arange(len(self)), j]).all():
                raise LatticeError(f"join row {x} is not an upper bound")
            if not (ub <= leq[j]).all():
                raise LatticeError(f"join row {x} is not least")
            lb = leq[:, x][None, :] & leq.T
            if not (lb <= leq[:, m].T).all():
                raise LatticeError(f"meet row {x} is not greatest")


def _partition_order(parts: Sequence[SetPartition], n: int) -> np.ndarray:
    """``leq[x, y]`` for a list of partitions, vectorized over ``y``."""
    labels = np.zeros((len(parts), n), dtype=np.int64)
    for r, p in enumerate(parts):
        for b in p.blocks:
            labels[r, [x - 1 for x in b]] = b[0] - 1
    leq = np.empty((len(parts), len(parts)), dtype=bool)
    for r in range(len(parts)):
        leq[r] = (labels[:, labels[r]] == labels).all(axis=1)
    return leq


def _check_cap(n: int, cap: int):
    if n > cap:
        raise LatticeError(f"n={n} exceeds the size cap {cap}")


def build_partition_lattice(n: int, cap: int = DEFAULT_SIZE_CAP) -> FiniteLattice:
    """The partition lattice of ``{1..n}`` ordered by reversed refinement."""
    if n < 2:
        raise LatticeError(f"partition lattice needs n >= 2, got {n}")
    _check_cap(n, cap)
    parts = sorted(set_partitions(n), key=lambda p: (p.rank, p.blocks))
    leq = _partition_order(parts, n)
    return FiniteLattice(parts, leq, [p.rank for p in parts], name=f"Pi_{n}")


def build_k_equal_lattice(n: int, k: int, cap: int = DEFAULT_SIZE_CAP) -> FiniteLattice:
    """Sublattice of the partition lattice join-generated by single ``k``-blocks."""
    if not n > k >= 2:
        raise LatticeError(f"k-equal lattice needs n > k >= 2, got n={n}, k={k}")
    _check_cap(n, cap)
    gens = {SetPartition.single_block(c, n) for c in itertools.combinations(range(1, n + 1), k)}
    closure = set(gens)
    frontier = set(gens)
    while frontier:
        fresh = {a.join(b) for a in frontier for b in closure} - closure
        closure |= fresh
        frontier = fresh
    closure.add(SetPartition.bottom(n))
    parts = sorted(closure, key=lambda p: (p.rank, p.blocks))
    leq = _partition_order(parts, n)
    return FiniteLattice(parts, leq, name=f"Pi_{n},{k}")


def build_block_size_poset(N: int, k: int, cap: int = DEFAULT_SIZE_CAP) -> FiniteLattice:
    """Induced subposet of partitions of ``{1..N}`` with every block size = 1 mod ``k``.

    Flagged as a poset: join and meet are not available.
    """
    if N < 2 or k < 1:
        raise LatticeError(f"block size poset needs N >= 2 and k >= 1, got N={N}, k={k}")
    _check_cap(N, cap)
    parts = [p for p in set_partitions(N) if all(len(b) % k == 1 % k for b in p.blocks)]
    parts.sort(key=lambda p: (p.rank, p.blocks))
    leq = _partition_order(parts, N)
    return FiniteLattice(parts, leq, [p.rank for p in parts], is_lattice=False, name=f"Pi_{N}^({k})")


def build_boolean_lattice(m: int) -> FiniteLattice:
    """Subsets of ``{1..m}`` under inclusion, payloads are frozensets."""
    subsets = [frozenset(c) for r in range(m + 1) for c in itertools.combinations(range(1, m + 1), r)]
    return FiniteLattice.from_order(subsets, lambda a, b: a <= b, rank=[len(s) for s in subsets], name=f"B_{m}")


def build_chain(length: int) -> FiniteLattice:
    """A chain ``0 < 1 < ... < length``."""
    return FiniteLattice.from_order(list(range(length + 1)), lambda a, b: a <= b, name=f"C_{length}")


# ---------------------------------------------------------------------------
# building sets


@dataclass(frozen=True)
class BuildingSet:
    lattice: FiniteLattice
    members: frozenset[int]

    def __post_init__(self):
        if self.lattice.bottom in self.members:
            raise LatticeError("a building set may not contain the bottom element")

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def contains_top(self) -> bool:
        return self.lattice.top in self.members


def _members(L: FiniteLattice, G) -> frozenset[int]:
    if isinstance(G, BuildingSet):
        return G.members
    return frozenset(int(g) for g in G)


def _join_image(L: FiniteLattice, parts: Sequence[np.ndarray]):
    """Image of ``(x_1..x_k) -> x_1 v ... v x_k`` over a product of index arrays.

    Returns the image array and one coordinate array per factor, all aligned.
    """
    image = np.array([L.bottom], dtype=np.int64)
    coords: list[np.ndarray] = []
    for part in parts:
        rows = np.stack([L.join_row(int(i)) for i in image])
        new_image = rows[:, part].ravel()
        coords = [np.repeat(c, len(part)) for c in coords]
        coords.append(np.tile(part, len(image)))
        image = new_image
    return image, coords


def _is_join_isomorphism(L: FiniteLattice, parts: Sequence[np.ndarray], target: np.ndarray) -> bool:
    size = 1
    for p in parts:
        size *= len(p)
    if size != len(target):
        return False
    image, coords = _join_image(L, parts)
    if len(np.unique(image)) != len(image) or set(image.tolist()) != set(target.tolist()):
        return False
    lhs = L.leq[np.ix_(image, image)]
    rhs = np.ones_like(lhs)
    for c in coords:
        rhs &= L.leq[np.ix_(c, c)]
    return bool((lhs == rhs).all())


def product_split(L: FiniteLattice, x: int) -> tuple[int, int] | None:
    """A pair ``(a, b)`` such that joining gives ``[0,a] x [0,b] = [0,x]``, or None.

    Any nontrivial product decomposition of ``[0, x]`` yields such a pair, so
    ``None`` means ``x`` is irreducible.
    """
    L._require_lattice()
    lower = L.below(x)
    inner = [int(a) for a in lower if a not in (L.bottom, x)]
    sizes = L.leq[:, :].sum(axis=0)
    total = len(lower)
    for a in inner:
        jr, mr = L.join_row(a), L.meet_row(a)
        for b in inner:
            if b <= a or jr[b] != x or mr[b] != L.bottom:
                continue
            if sizes[a] * sizes[b] != total:
                continue
            if _is_join_isomorphism(L, [L.below(a), L.below(b)], lower):
                return a, b
    return None


def irreducibles(L: FiniteLattice) -> frozenset[int]:
    """Elements above the bottom whose lower interval is not a nontrivial product."""
    L._require_lattice()
    return frozenset(x for x in range(len(L)) if x != L.bottom and product_split(L, x) is None)


def minimal_building_set(L: FiniteLattice) -> BuildingSet:
    return BuildingSet(L, irreducibles(L))


def maximal_building_set(L: FiniteLattice) -> BuildingSet:
    return BuildingSet(L, frozenset(i for i in range(len(L)) if i != L.bottom))


def factors(L: FiniteLattice, G, X: int) -> list[int]:
    """Maximal members of ``G`` below or equal to ``X``."""
    if X == L.bottom:
        raise LatticeError("the bottom element has no factors")
    members = _members(L, G)
    return L.maximal(g for g in members if L.leq[g, X])


def is_building_set(L: FiniteLattice, G) -> bool:
    """Check the product-decomposition axiom for every element above the bottom."""
    L._require_lattice()
    members = _members(L, G)
    if L.bottom in members:
        raise LatticeError("a building set may not contain the bottom element")
    for x in range(len(L)):
        if x == L.bottom:
            continue
        fs = factors(L, members, x)
        if not fs:
            return False
        if not _is_join_isomorphism(L, [L.below(g) for g in fs], L.below(x)):
            return False
    return True
