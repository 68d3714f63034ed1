"""
Abstract simplicial complexes with stable vertex labels.

Complexes are stored by their facets; a face is any subset of a facet.
Vertex labels are arbitrary hashables (set partitions, frozensets of
leaves, ...).  Their canonical string encoding fixes the vertex order,
which in turn fixes every face order, matrix layout and JSON output.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping

from .lattice import FiniteLattice, LatticeError, SetPartition, encode_subset, factors, irreducibles, is_building_set

Label = Hashable


class ComplexError(ValueError):
    """Raised for invalid faces, labels or subdivision arguments."""


class SubdivisionError(RuntimeError):
    """A subdivision step found its face missing (the step order is inconsistent)."""


def encode_label(label: Label) -> str:
    """Canonical string for a vertex label."""
    if isinstance(label, str):
        return label
    if isinstance(label, SetPartition):
        return str(label)
    if isinstance(label, (frozenset, set, tuple)):
        items = list(label)
        if all(isinstance(x, int) for x in items):
            return encode_subset(items)
        return "{" + ",".join(sorted(encode_label(x) for x in items)) + "}"
    return str(label)


def label_key(label: Label) -> tuple[str, str]:
    return encode_label(label), type(label).__name__


def _maximal_faces(faces: Iterable[frozenset]) -> frozenset[frozenset]:
    by_size = sorted({f for f in faces if f}, key=len, reverse=True)
    kept: list[frozenset] = []
    holders: dict[Label, set[int]] = {}
    for f in by_size:
        it = iter(f)
        common = set(holders.get(next(it), ()))
        for v in it:
            if not common:
                break
            common &= holders.get(v, set())
        if common:
            continue
        idx = len(kept)
        kept.append(f)
        for v in f:
            holders.setdefault(v, set()).add(idx)
    return frozenset(kept)


class SimplicialComplex:
    """An abstract simplicial complex given by (any generating set of) its faces.

    Non-maximal generators are dropped, so ``facets`` is always an antichain
    under inclusion.  The empty complex has no facets.
    """

    def __init__(self, faces: Iterable[Iterable[Label]] = ()):
        self.facets: frozenset[frozenset] = _maximal_faces(frozenset(f) for f in faces)
        verts = {v for f in self.facets for v in f}
        self.vertices: tuple[Label, ...] = tuple(sorted(verts, key=label_key))
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self._faces_cache: dict[int, list[tuple]] = {}

    def __repr__(self) -> str:
        return f"<SimplicialComplex dim={self.dim} vertices={len(self.vertices)} facets={len(self.facets)}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def vertex_index(self, v: Label) -> int:
        return self._vindex[v]

    def sort_face(self, face: Iterable[Label]) -> tuple:
        return tuple(sorted(face, key=self._vindex.__getitem__))

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def sorted_facets(self) -> list[tuple]:
        return sorted((self.sort_face(f) for f in self.facets), key=lambda t: [self._vindex[v] for v in t])

    def faces(self, d: int) -> list[tuple]:
        """All ``d``-dimensional faces, lexicographic on vertex-index tuples."""
        if d in self._faces_cache:
            return self._faces_cache[d]
        found = set()
        for f in self.facets:
            if len(f) > d:
                idx = sorted(self._vindex[v] for v in f)
                found.update(itertools.combinations(idx, d + 1))
        out = [tuple(self.vertices[i] for i in t) for t in sorted(found)]
        self._faces_cache[d] = out
        return out

    def all_faces(self) -> Iterable[tuple]:
        for d in range(self.dim + 1):
            yield from self.faces(d)

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(d)) for d in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector))

    def is_face(self, face: Iterable[Label]) -> bool:
        face = frozenset(face)
        if not face:
            return True
        return any(face <= f for f in self.facets)

    __contains__ = is_face

    def star_facets(self, face: Iterable[Label]) -> list[frozenset]:
        face = frozenset(face)
        return [f for f in self.facets if face <= f]

    def link(self, face: Iterable[Label]) -> "SimplicialComplex":
        face = frozenset(face)
        return SimplicialComplex(f - face for f in self.star_facets(face))

    def relabel(self, mapping: Mapping | Callable) -> "SimplicialComplex":
        fn = mapping if callable(mapping) else mapping.__getitem__
        images = {v: fn(v) for v in self.vertices}
        if len(set(images.values())) != len(images):
            raise ComplexError("relabelling is not injective")
        return SimplicialComplex(frozenset(images[v] for v in f) for f in self.facets)

    def edges(self) -> list[tuple]:
        return self.faces(1)

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        names = [encode_label(v) for v in self.vertices]
        if len(set(names)) != len(names):
            raise ComplexError("vertex labels do not have distinct encodings")
        order = sorted(range(len(names)), key=names.__getitem__)
        pos = {old: new for new, old in enumerate(order)}
        facets = sorted(sorted(pos[self._vindex[v]] for v in f) for f in self.facets)
        return {"vertices": [names[i] for i in order], "facets": facets}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: Mapping) -> "SimplicialComplex":
        """Read the JSON complex format; labels become strings, any order accepted."""
        verts = list(data["vertices"])
        return cls(frozenset(verts[i] for i in f) for f in data["facets"])

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        return cls.from_dict(json.loads(text))


def complexes_equal(A: SimplicialComplex, B: SimplicialComplex, label_map: Mapping | Callable | None = None) -> bool:
    """True iff the facets of ``A``, relabelled by ``label_map``, are those of ``B``."""
    if label_map is None:
        return A.facets == B.facets
    fn = label_map if callable(label_map) else label_map.__getitem__
    images = {v: fn(v) for v in A.vertices}
    if len(set(images.values())) != len(images):
        raise ComplexError("label map is not injective")
    return frozenset(frozenset(images[v] for v in f) for f in A.facets) == B.facets


# ---------------------------------------------------------------------------
# complexes from posets


def order_complex(P: FiniteLattice, strip: bool = True) -> SimplicialComplex:
    """Chains of the proper part of ``P`` (or of all of ``P`` if ``strip`` is false)."""
    skip = {P.bottom, P.top} if strip else set()
    keep = [i for i in range(len(P)) if i not in skip]
    keep_set = set(keep)
    up = {i: [j for j in P.upper_covers[i] if j in keep_set] for i in keep}
    minimal = [i for i in keep if not any(j in keep_set for j in P.lower_covers[i])]
    chains = []

    def rec(path):
        nxt = up[path[-1]]
        if not nxt:
            chains.append(frozenset(P[i] for i in path))
            return
        for j in nxt:
            path.append(j)
            rec(path)
            path.pop()

    for m in minimal:
        rec([m])
    return SimplicialComplex(chains)


def _is_nested_extension(L: FiniteLattice, G: frozenset[int], S: list[int], y: int) -> bool:
    """Whether every antichain of ``S + [y]`` through ``y`` (size >= 2) joins outside ``G``."""
    leq = L.leq
    inc = [s for s in S if not (leq[s, y] or leq[y, s])]

    def rec(start, acc, chosen):
        for i in range(start, len(inc)):
            s = inc[i]
            if any(leq[s, c] or leq[c, s] for c in chosen):
                continue
            j = L.join(acc, s)
            if j in G:
                return False
            chosen.append(s)
            ok = rec(i + 1, j, chosen)
            chosen.pop()
            if not ok:
                return False
        return True

    return rec(0, y, [])


def nested_sets(L: FiniteLattice, G, exclude: Iterable[int] = ()) -> list[tuple[int, ...]]:
    """All nonempty ``G``-nested sets (as index tuples) avoiding ``exclude``."""
    members = frozenset(G.members if hasattr(G, "members") else G)
    cand = sorted(members - set(exclude))
    out: list[tuple[int, ...]] = []
    S: list[int] = []

    def rec(start):
        for i in range(start, len(cand)):
            y = cand[i]
            if _is_nested_extension(L, members, S, y):
                S.append(y)
                out.append(tuple(S))
                rec(i + 1)
                S.pop()

    rec(0)
    return out


def nested_set_complex(L: FiniteLattice, G, reduced: bool = True, check: bool = True) -> SimplicialComplex:
    """The complex of ``G``-nested sets, vertices labelled by element payloads.

    With ``reduced`` the top element (which is comparable to everything and
    so a cone apex) is deleted; this needs ``G`` to contain the top.
    """
    members = frozenset(G.members if hasattr(G, "members") else G)
    if check and not is_building_set(L, members):
        raise LatticeError("not a building set")
    if reduced and L.top not in members:
        raise LatticeError("the reduced nested set complex needs the top element in the building set")
    exclude = {L.top} if reduced else set()
    faces = nested_sets(L, members, exclude)
    return SimplicialComplex(frozenset(L[i] for i in f) for f in faces)


# ---------------------------------------------------------------------------
# subdivisions


def stellar_subdivision(K: SimplicialComplex, face: Iterable[Label], new_label: Label) -> SimplicialComplex:
    """Stellar subdivision of ``K`` at ``face`` with a new vertex ``new_label``."""
    F = frozenset(face)
    if len(F) < 2:
        raise ComplexError("stellar subdivision needs a face with at least 2 vertices")
    if new_label in K._vindex:
        raise ComplexError(f"label {encode_label(new_label)} is already a vertex")
    if not K.is_face(F):
        raise ComplexError(f"{sorted(map(encode_label, F))} is not a face")
    out = []
    for f in K.facets:
        if F <= f:
            rest = f - F
            out.extend((F - {x}) | rest | {new_label} for x in F)
        else:
            out.append(f)
    return SimplicialComplex(out)


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """Vertices are the nonempty faces of ``K``; faces are inclusion chains."""
    flags = []
    for f in K.facets:
        for perm in itertools.permutations(K.sort_face(f)):
            flags.append(frozenset(frozenset(perm[: i + 1]) for i in range(len(perm))))
    return SimplicialComplex(flags)


@dataclass
class SubdivisionTrace:
    """Ordered stellar subdivisions leading from ``start`` to ``end``."""

    start: SimplicialComplex
    steps: list[tuple[frozenset, Label]] = field(default_factory=list)
    end: SimplicialComplex | None = None

    def replay(self, upto: int | None = None) -> SimplicialComplex:
        K = self.start
        for F, v in self.steps[:upto]:
            K = stellar_subdivision(K, F, v)
        return K

    def intermediates(self) -> Iterable[SimplicialComplex]:
        """``start``, then the complex after each step."""
        K = self.start
        yield K
        for F, v in self.steps:
            K = stellar_subdivision(K, F, v)
            yield K

    def carrier(self, simplex: Iterable[Label]) -> frozenset:
        """Smallest face of ``start`` containing ``simplex`` of ``end``.

        A simplex through the vertex added at face ``F`` lies inside the old
        simplex (simplex minus that vertex) joined with ``F``; undoing the
        steps in reverse order gives the carrier in ``start``.
        """
        s = frozenset(simplex)
        for F, v in reversed(self.steps):
            if v in s:
                s = (s - {v}) | F
        return s

    def to_dict(self) -> dict:
        return {
            "steps": [
                {"face": sorted(encode_label(x) for x in F), "new_vertex": encode_label(v)} for F, v in self.steps
            ],
            "start": self.start.to_dict(),
            "end": None if self.end is None else self.end.to_dict(),
        }


def subdivision_order(L: FiniteLattice, I: Iterable[int]) -> list[int]:
    """Reducible proper elements, larger rank first, ties by canonical encoding."""
    I = set(I)
    red = [x for x in L.proper_part() if x not in I]
    return sorted(red, key=lambda x: (-int(L.rank[x]), encode_label(L[x])))


def subdivide_to_order_complex(L: FiniteLattice, I: Iterable[int] | None = None) -> tuple[SimplicialComplex, SubdivisionTrace]:
    """Subdivide the reduced minimal nested set complex of ``L`` into its order complex.

    Every reducible element ``X`` is inserted, in :func:`subdivision_order`,
    by a stellar subdivision of the face spanned by its irreducible factors.
    """
    I = frozenset(irreducibles(L) if I is None else I)
    K = nested_set_complex(L, I, reduced=True, check=False)
    trace = SubdivisionTrace(start=K)
    for X in subdivision_order(L, I):
        F = frozenset(L[f] for f in factors(L, I, X))
        if not K.is_face(F):
            raise SubdivisionError(f"factor face of {encode_label(L[X])} is missing")
        K = stellar_subdivision(K, F, L[X])
        trace.steps.append((F, L[X]))
    trace.end = K
    return K, trace


# ---------------------------------------------------------------------------
# rational realization of one triangle


def _point_on_segment(p, a, b) -> Fraction | None:
    d = [y - x for x, y in zip(a, b)]
    k = next(i for i, v in enumerate(d) if v != 0)
    t = (p[k] - a[k]) / d[k]
    if any(p[i] != a[i] + t * d[i] for i in range(len(a))) or not 0 <= t <= 1:
        return None
    return t


def segment_is_union_of_cells(a, b, K: SimplicialComplex, pos: Mapping) -> bool:
    """Whether the closed segment ``[a, b]`` is a union of closed cells of ``K``.

    Only vertices and edges fit inside a segment, so this asks whether the
    edges of ``K`` lying on the segment cover it.
    """
    spans = []
    for u, w in K.edges():
        tu, tw = _point_on_segment(pos[u], a, b), _point_on_segment(pos[w], a, b)
        if tu is not None and tw is not None:
            spans.append((min(tu, tw), max(tu, tw)))
    reach = Fraction(0)
    for s, e in sorted(spans):
        if s > reach:
            return False
        reach = max(reach, e)
    return reach == 1


def _barycenter(points):
    points = list(points)
    return tuple(sum(c) / len(points) for c in zip(*points))


@dataclass
class Remark3Report:
    triangles: int
    edges: int
    contains_edge: bool
    edge_refined_by_bsd: bool
    bsd_edges_self_refined: bool
    steps: list[str]

    @property
    def passed(self) -> bool:
        return self.contains_edge and not self.edge_refined_by_bsd

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {**self.__dict__, "passed": self.passed}


def verify_remark3_non_refinement() -> Remark3Report:
    """Subdivide the triangle {23, 45, 145} of the complex of trees on 5 leaves.

    The triangle is realized as the standard 2-simplex with exact rational
    coordinates; each new vertex sits at the barycenter of the face it
    subdivides.  The report states whether the edge 23|45 -- 23|145 appears
    and whether its segment is a union of cells of the barycentric
    subdivision of the triangle.
    """
    from .lattice import build_partition_lattice

    L = build_partition_lattice(5)
    I = irreducibles(L)
    tri = [SetPartition.single_block(b, 5) for b in ((2, 3), (4, 5), (1, 4, 5))]
    pos = {v: tuple(Fraction(int(i == j)) for j in range(3)) for i, v in enumerate(tri)}
    K = SimplicialComplex([tri])
    steps = []
    for X in subdivision_order(L, I):
        F = frozenset(L[f] for f in factors(L, I, X))
        if F <= set(pos) and K.is_face(F):
            K = stellar_subdivision(K, F, L[X])
            pos[L[X]] = _barycenter(pos[v] for v in F)
            steps.append(L[X].short())
    e_small = SetPartition.parse("23|45", 5)
    e_big = SetPartition.parse("23|145", 5)
    contains = K.is_face({e_small, e_big})

    base = SimplicialComplex([tri])
    bsd = barycentric_subdivision(base)
    bpos = {face: _barycenter(pos[v] for v in face) for face in bsd.vertices}
    refined = contains and segment_is_union_of_cells(pos[e_small], pos[e_big], bsd, bpos)
    control = all(segment_is_union_of_cells(bpos[u], bpos[w], bsd, bpos) for u, w in bsd.edges())
    return Remark3Report(
        triangles=len(K.faces(2)),
        edges=len(K.faces(1)),
        contains_edge=contains,
        edge_refined_by_bsd=refined,
        bsd_edges_self_refined=control,
        steps=steps,
    )
