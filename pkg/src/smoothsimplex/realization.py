"""Realizations of finite simplicial sets as normal-form points.

A point of the realization ``|K|`` is stored as a pair (nondegenerate
simplex, interior barycentric coordinates): the classical Eilenberg-Zilber
representative.  The colimit is never materialized; ``normalize`` collapses
degeneracy coordinates by summation and pushes zero coordinates into faces
until the representative is reached.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .geometry import Bary, Number
from .simplicial import (
    EMPTY,
    FiniteSimplicialSet,
    Simplex,
    SimplexRef,
    SimplicialMap,
)


@dataclass(frozen=True)
class RealPoint:
    """Normal form of a point of ``|K|``: nondegenerate simplex plus
    strictly interior coordinates."""

    simplex: SimplexRef
    coords: Bary

    def __post_init__(self) -> None:
        if self.coords.p != self.simplex.dim:
            raise ValueError("coordinate dimension does not match the simplex")

    def key(self) -> tuple:
        return (self.simplex.id, self.coords.coords)

    def to_json_dict(self) -> dict:
        return {"simplex": self.simplex.id,
                "coords": [float(c) for c in self.coords.coords]}


def _collapse_word(word: tuple[int, ...], coords: tuple[Number, ...]
                   ) -> tuple[Number, ...]:
    # each degeneracy letter j merges coordinate slots j and j+1; letters
    # are strictly decreasing, so inner letters are unaffected
    for j in word:
        coords = coords[:j] + (coords[j] + coords[j + 1],) + coords[j + 2:]
    return coords


def normalize(K: FiniteSimplicialSet, sx: Simplex, u: Bary) -> RealPoint:
    """Normal form of the point ``(sx, u)`` of ``|K|``."""
    word, ref = sx
    if u.p != ref.dim + len(word):
        raise ValueError("coordinate dimension does not match the simplex")
    coords = _collapse_word(word, u.coords)
    while True:
        zero = None
        for i, c in enumerate(coords):
            if c == 0:
                zero = i
                break
        if zero is None:
            return RealPoint(ref, Bary(coords))
        if ref.dim == 0:
            raise ValueError("all coordinates of a point vanish")
        fw, ftgt = K.face((EMPTY, ref), zero)
        coords = _collapse_word(fw, coords[:zero] + coords[zero + 1:])
        ref = ftgt


def canonical_injection(incl: SimplicialMap, pt: RealPoint) -> Bary:
    """The injection ``|K| -> Δ^p`` for a subcomplex ``K`` of ``Δ[p]``,
    given its inclusion into ``standard_simplicial_set(p)``.

    Distinct normal forms land on distinct points; the tests check this by
    exact rational comparison.
    """
    K, ambient = incl.source, incl.target
    if pt.simplex.id not in incl.assignment:
        raise ValueError(f"{pt.simplex} is not a simplex of {K.name}")
    word, ref = incl.assignment[pt.simplex.id]
    if word != EMPTY:
        raise ValueError("inclusion must be a subcomplex inclusion")
    verts = ambient.labels.get(ref.id)
    if not isinstance(verts, tuple):
        raise ValueError("ambient complex does not carry vertex labels")
    p = ambient.dimension
    coords: list[Number] = [0] * (p + 1)
    for slot, v in enumerate(verts):
        coords[v] = pt.coords[slot]
    return Bary(tuple(coords))


def realize_map(f: SimplicialMap, pt: RealPoint) -> RealPoint:
    """The realized map ``|f|`` on normal forms."""
    if pt.simplex.id not in f.assignment:
        raise ValueError(f"{pt.simplex} is not a simplex of the source")
    return normalize(f.target, f.assignment[pt.simplex.id], pt.coords)


@dataclass
class CellFiber:
    """Preimage of a subset ``B`` of ``|K|`` under one cell map
    ``Δ^{dim σ} -> |K|``."""

    simplex: SimplexRef
    contains: Callable[[Bary], bool]


def subcomplex_fiber_decomposition(
        K: FiniteSimplicialSet,
        predicate: Callable[[RealPoint], bool]) -> dict[int, CellFiber]:
    """Per-cell preimages of the subset of ``|K|`` cut out by ``predicate``
    on normal forms."""
    out = {}
    for ref in K.nondegenerate():
        def contains(u: Bary, _ref=ref) -> bool:
            return predicate(normalize(K, (EMPTY, _ref), u))
        out[ref.id] = CellFiber(ref, contains)
    return out


# -- the Appendix-A witness ---------------------------------------------------


def maximal_simplices(K: FiniteSimplicialSet) -> list[SimplexRef]:
    """Nondegenerate simplices that are not iterated faces of another."""
    proper_faces: set[int] = set()
    for ref in K.nondegenerate():
        stack = [ref]
        visited: set[int] = set()
        while stack:
            cur = stack.pop()
            if cur.dim == 0:
                continue
            for i in range(cur.dim + 1):
                _, tgt = K.face((EMPTY, cur), i)
                if tgt.id not in visited:
                    visited.add(tgt.id)
                    proper_faces.add(tgt.id)
                    stack.append(tgt)
    return [r for r in K.nondegenerate() if r.id not in proper_faces]


def _is_connected(K: FiniteSimplicialSet) -> bool:
    verts = K.nondegenerate(0)
    if len(verts) <= 1:
        return True
    parent = {v.id: v.id for v in verts}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in K.nondegenerate(1):
        a = find(K.face((EMPTY, e), 0)[1].id)
        b = find(K.face((EMPTY, e), 1)[1].id)
        parent[a] = b
    roots = {find(v.id) for v in verts}
    return len(roots) == 1


def _vertex_ids(K: FiniteSimplicialSet, ref: SimplexRef) -> tuple[int, ...]:
    return tuple(tgt.id for _, tgt in K.vertices_of((EMPTY, ref)))


def _sort_key(K: FiniteSimplicialSet, ref: SimplexRef):
    label = K.labels.get(ref.id)
    if isinstance(label, tuple):
        return (0, label)
    return (1, _vertex_ids(K, ref))


def witness_not_single_generated(K: FiniteSimplicialSet) -> Optional[dict]:
    """Witness that a connected ``K`` with at least two maximal simplices is
    not generated by a single simplex: two maximal simplices sharing a
    vertex, plus a piecewise-linear crossing-curve specification through
    that vertex.  Returns ``None`` when the premise fails.
    """
    if not _is_connected(K):
        return None
    maxima = sorted(maximal_simplices(K), key=lambda r: _sort_key(K, r))
    if len(maxima) < 2:
        return None
    for ia in range(len(maxima)):
        for ib in range(ia + 1, len(maxima)):
            a, b = maxima[ia], maxima[ib]
            shared = sorted(set(_vertex_ids(K, a)) & set(_vertex_ids(K, b)))
            if not shared:
                continue
            v = shared[0]
            slot_a = _vertex_ids(K, a).index(v)
            slot_b = _vertex_ids(K, b).index(v)
            return {
                "sigma": a,
                "tau": b,
                "shared_vertex": K.ref(v),
                "curve": _crossing_curve(a, b, slot_a, slot_b),
            }
    return None


def _crossing_curve(a: SimplexRef, b: SimplexRef, slot_a: int, slot_b: int
                    ) -> Callable[[Fraction], tuple[SimplexRef, Bary]]:
    """A piecewise-linear injection (-1, 1) -> |K| crossing the shared
    vertex at 0: barycenter-to-vertex on ``a``, vertex-to-barycenter on
    ``b``.  For t != 0 the value lies in the corresponding open simplex."""

    def curve(t: Fraction) -> tuple[SimplexRef, Bary]:
        t = Fraction(t)
        if not -1 < t < 1:
            raise ValueError("curve parameter outside (-1, 1)")
        if t < 0:
            w = -t
            na = a.dim + 1
            coords = tuple(w * Fraction(1, na) +
                           ((1 - w) if i == slot_a else 0) for i in range(na))
            return (a, Bary(coords))
        w = t
        nb = b.dim + 1
        coords = tuple(w * Fraction(1, nb) +
                       ((1 - w) if i == slot_b else 0) for i in range(nb))
        return (b, Bary(coords))

    return curve
