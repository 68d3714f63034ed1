"""
Exact simplicial homology: boundary matrices, reduced Betti numbers and
top-dimensional cycle bases.

Faces are oriented by ascending vertex order (the complex's vertex order)
and listed lexicographically, so matrices are reproducible.  Ranks are
computed by sparse elimination, either fraction-free over the integers
(which gives the rank over the rationals) or modulo a prime.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .complexes import SimplicialComplex

DEFAULT_PRIME = 46337


def _parse_field(field) -> int | None:
    """``None`` for the rationals, otherwise the prime modulus."""
    if field is None or field in ("rational", "rationals", "Q", "QQ"):
        return None
    if isinstance(field, str):
        if field.startswith("prime:"):
            field = field.split(":", 1)[1]
        try:
            field = int(field)
        except ValueError:
            raise ValueError(f"unknown field {field!r}") from None
    p = int(field)
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not a prime")
    return p


def _boundary_columns(K: SimplicialComplex, d: int) -> list[dict[int, int]]:
    """Sparse columns of the boundary map from d-faces to (d-1)-faces."""
    if d == 0:
        return [{0: 1} for _ in K.faces(0)]
    rows = {f: i for i, f in enumerate(K.faces(d - 1))}
    cols = []
    for face in K.faces(d):
        cols.append({rows[face[:i] + face[i + 1:]]: (-1) ** i for i in range(len(face))})
    return cols


def boundary_matrix(K: SimplicialComplex, d: int) -> np.ndarray:
    """Integer boundary matrix with rows ``K.faces(d-1)`` and columns ``K.faces(d)``.

    For ``d = 0`` this is the augmentation, a single row of ones, so the
    homology computed from these matrices is reduced homology.
    """
    if not 0 <= d <= K.dim:
        raise ValueError(f"d={d} outside 0..{K.dim}")
    nrows = 1 if d == 0 else len(K.faces(d - 1))
    cols = _boundary_columns(K, d)
    M = np.zeros((nrows, len(cols)), dtype=np.int64)
    for j, col in enumerate(cols):
        for i, v in col.items():
            M[i, j] = v
    return M


def _rank_integer(vectors: Iterable[dict[int, int]]) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for vec in vectors:
        r = {c: v for c, v in vec.items() if v}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                g = 0
                for v in r.values():
                    g = gcd(g, v)
                pivots[c] = {k: v // g for k, v in r.items()}
                break
            a, b = piv[c], r[c]
            new = {k: a * v for k, v in r.items()}
            for k, v in piv.items():
                new[k] = new.get(k, 0) - b * v
            r = {k: v for k, v in new.items() if v}
            g = 0
            for v in r.values():
                g = gcd(g, v)
            if g > 1:
                r = {k: v // g for k, v in r.items()}
    return len(pivots)


def _rank_mod(vectors: Iterable[dict[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for vec in vectors:
        r = {c: v % p for c, v in vec.items() if v % p}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in r.items()}
                break
            b = r[c]
            for k, v in piv.items():
                nv = (r.get(k, 0) - b * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


def rank(vectors: Sequence[dict[int, int]] | np.ndarray, field="rational") -> int:
    """Rank of a sparse (list of dict vectors) or dense matrix.

    Dense matrices may hold ints or :class:`~fractions.Fraction`; their rows
    are treated as the vectors.
    """
    p = _parse_field(field)
    if isinstance(vectors, np.ndarray):
        vectors = [{j: v for j, v in enumerate(row) if v} for row in vectors]
    vectors = [_integral(v) for v in vectors]
    return _rank_integer(vectors) if p is None else _rank_mod(vectors, p)


def _integral(vec: dict) -> dict[int, int]:
    if all(isinstance(v, (int, np.integer)) for v in vec.values()):
        return {k: int(v) for k, v in vec.items()}
    fr = {k: Fraction(v) for k, v in vec.items()}
    m = lcm(*(v.denominator for v in fr.values())) if fr else 1
    return {k: int(v * m) for k, v in fr.items()}


def boundary_ranks(K: SimplicialComplex, field="rational") -> list[int]:
    """``rank(∂_d)`` for ``d = 0..dim``, with ``∂_0`` the augmentation."""
    p = _parse_field(field)
    out = []
    for d in range(K.dim + 1):
        cols = _boundary_columns(K, d)
        out.append(_rank_integer(cols) if p is None else _rank_mod(cols, p))
    return out


def reduced_betti(K: SimplicialComplex, field="rational") -> list[int]:
    """Reduced Betti numbers ``[b_0, ..., b_dim]`` over the rationals or GF(p).

    ``field`` is ``"rational"`` (default), a prime, or ``"prime:<p>"``.
    """
    ranks = boundary_ranks(K, field) + [0]
    return [len(K.faces(d)) - ranks[d] - ranks[d + 1] for d in range(K.dim + 1)]


def reduced_euler_characteristic(K: SimplicialComplex) -> int:
    return K.euler_characteristic() - 1


def top_cycle_basis(K: SimplicialComplex) -> np.ndarray:
    """Basis of the kernel of the top boundary map, one cycle per column.

    Rows follow ``K.faces(K.dim)``; entries are Fractions (object dtype).
    """
    d = K.dim
    cols = _boundary_columns(K, d)
    n = len(cols)
    rows: dict[int, dict[int, Fraction]] = {}
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows.setdefault(i, {})[j] = Fraction(v)

    # sparse RREF; every pivot row is zero in all other pivot columns
    pivot_rows: dict[int, dict[int, Fraction]] = {}
    for r in rows.values():
        r = dict(r)
        for c in sorted(set(r) & set(pivot_rows)):
            if c in r:
                f = r[c]
                for k, v in pivot_rows[c].items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        if not r:
            continue
        c = min(r)
        inv = 1 / r[c]
        r = {k: v * inv for k, v in r.items()}
        for other in pivot_rows.values():
            f = other.get(c)
            if f:
                for k, v in r.items():
                    nv = other.get(k, 0) - f * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        pivot_rows[c] = r

    free = [j for j in range(n) if j not in pivot_rows]
    basis = np.zeros((n, len(free)), dtype=object)
    basis[:] = Fraction(0)
    for t, f in enumerate(free):
        basis[f, t] = Fraction(1)
        for c, r in pivot_rows.items():
            v = r.get(f)
            if v:
                basis[c, t] = -v
    return basis
