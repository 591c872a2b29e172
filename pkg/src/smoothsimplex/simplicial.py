"""Finite simplicial sets presented by their nondegenerate simplices.

Only nondegenerate simplices are stored; degenerate ones are represented on
demand as ``(word, ref)`` pairs in Eilenberg-Zilber normal form.  Face data
of a nondegenerate simplex may point at a degenerate simplex, hence faces are
stored as ``(word, target_ref)`` pairs as well.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Optional

from . import words
from .words import EMPTY, Word


@dataclass(frozen=True)
class SimplexRef:
    """Handle for one nondegenerate simplex of a fixed complex."""

    id: int
    dim: int

    def __repr__(self) -> str:
        return f"<{self.dim}-simplex #{self.id}>"


Simplex = tuple[Word, SimplexRef]
"""A (possibly degenerate) simplex in normal form."""


def simplex_dim(sx: Simplex) -> int:
    word, ref = sx
    return ref.dim + len(word)


class FiniteSimplicialSet:
    """A finite simplicial set with explicit face data.

    ``faces[ref.id][i]`` is the normal form of ``d_i ref`` for a
    nondegenerate ``ref`` of positive dimension.  ``labels`` optionally
    carries presentation data (vertex tuples for subcomplexes of a standard
    simplex); it has no semantic weight beyond reporting and the canonical
    injection of the realization module.
    """

    def __init__(self, name: str = "") -> None:
        self.name = name
        self._by_dim: dict[int, list[SimplexRef]] = {}
        self._refs: dict[int, SimplexRef] = {}
        self._faces: dict[int, list[Simplex]] = {}
        self.labels: dict[int, object] = {}
        self._next_id = 0

    # -- construction ----------------------------------------------------

    def add_simplex(self, dim: int, faces: Optional[list[Simplex]] = None,
                    label: object = None) -> SimplexRef:
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        if dim == 0 and faces:
            raise ValueError("a vertex has no faces")
        if dim > 0:
            if faces is None or len(faces) != dim + 1:
                raise ValueError(f"a {dim}-simplex needs {dim + 1} faces")
        ref = SimplexRef(self._next_id, dim)
        self._next_id += 1
        self._by_dim.setdefault(dim, []).append(ref)
        self._refs[ref.id] = ref
        if dim > 0:
            assert faces is not None
            for i, (word, tgt) in enumerate(faces):
                if tgt.id not in self._refs:
                    raise ValueError(f"face target {tgt} not in complex")
                if tgt.dim + len(word) != dim - 1:
                    raise ValueError(f"face {i} of {ref} has wrong dimension")
                words.check_valid(word, tgt.dim)
            self._faces[ref.id] = list(faces)
        if label is not None:
            self.labels[ref.id] = label
        return ref

    # -- basic queries ---------------------------------------------------

    @property
    def dimension(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    def nondegenerate(self, dim: Optional[int] = None) -> list[SimplexRef]:
        if dim is None:
            return [r for d in sorted(self._by_dim) for r in self._by_dim[d]]
        return list(self._by_dim.get(dim, []))

    def counts(self) -> list[int]:
        """Number of nondegenerate simplices per dimension, ``[n0, n1, ...]``."""
        if not self._by_dim:
            return []
        return [len(self._by_dim.get(d, [])) for d in range(self.dimension + 1)]

    def ref(self, ident: int) -> SimplexRef:
        return self._refs[ident]

    def __contains__(self, ref: SimplexRef) -> bool:
        return self._refs.get(ref.id) == ref

    def face(self, sx: Simplex, i: int) -> Simplex:
        """``d_i`` of a simplex in normal form."""
        word, ref = sx
        n = simplex_dim(sx)
        if n == 0:
            raise ValueError("a vertex has no faces")
        if not 0 <= i <= n:
            raise ValueError(f"face index {i} out of range for dimension {n}")
        word1, residual = words.prepend_face(i, word)
        if residual is None:
            return (word1, ref)
        inner_word, target = self._faces[ref.id][residual]
        return (words.concat(word1, inner_word), target)

    def degeneracy(self, sx: Simplex, j: int) -> Simplex:
        word, ref = sx
        n = simplex_dim(sx)
        if not 0 <= j <= n:
            raise ValueError(f"degeneracy index {j} out of range")
        return (words.prepend_degeneracy(j, word), ref)

    def simplices(self, n: int) -> Iterator[Simplex]:
        """All ``n``-simplices, degenerate ones included, in a fixed order."""
        for m in range(n + 1):
            for ref in self._by_dim.get(m, []):
                for word in words.words_of_length(n - m, n):
                    yield (word, ref)

    def vertices_of(self, sx: Simplex) -> tuple[Simplex, ...]:
        """The ordered vertex list of a simplex, as 0-simplices."""
        n = simplex_dim(sx)
        out = []
        for v in range(n + 1):
            cur = sx
            # strip from the back, then from the front, to isolate vertex v
            for _ in range(n - v):
                cur = self.face(cur, simplex_dim(cur))
            for _ in range(v):
                cur = self.face(cur, 0)
            out.append(cur)
        return tuple(out)

    # -- validation ------------------------------------------------------

    def validate(self) -> None:
        """Check the simplicial identities d_i d_j = d_{j-1} d_i (i < j)."""
        for dim in sorted(self._by_dim):
            if dim < 2:
                continue
            for ref in self._by_dim[dim]:
                sx: Simplex = (EMPTY, ref)
                for j in range(1, dim + 1):
                    for i in range(j):
                        lhs = self.face(self.face(sx, j), i)
                        rhs = self.face(self.face(sx, i), j - 1)
                        if lhs != rhs:
                            raise ValueError(
                                f"simplicial identity fails on {ref}: "
                                f"d_{i} d_{j} = {lhs} != {rhs} = d_{j-1} d_{i}")

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        dims = [[r.id for r in self._by_dim.get(d, [])]
                for d in range(self.dimension + 1)]
        faces = {
            str(ident): [[list(word), tgt.id] for word, tgt in fl]
            for ident, fl in sorted(self._faces.items())
        }
        return {"dims": dims, "faces": faces}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict, name: str = "") -> "FiniteSimplicialSet":
        out = cls(name)
        id_map: dict[int, SimplexRef] = {}
        faces_raw = {int(k): v for k, v in data.get("faces", {}).items()}
        for dim, ids in enumerate(data["dims"]):
            for ident in ids:
                if dim == 0:
                    id_map[ident] = out.add_simplex(0)
                else:
                    face_list = []
                    for word, tgt in faces_raw[ident]:
                        face_list.append((tuple(word), id_map[tgt]))
                    id_map[ident] = out.add_simplex(dim, face_list)
        out.validate()
        return out

    @classmethod
    def from_json(cls, text: str, name: str = "") -> "FiniteSimplicialSet":
        return cls.from_json_dict(json.loads(text), name)


class SimplicialMap:
    """A simplicial map, stored on nondegenerate simplices of the source."""

    def __init__(self, source: FiniteSimplicialSet, target: FiniteSimplicialSet,
                 assignment: dict[int, Simplex], name: str = "") -> None:
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        self.name = name

    def __call__(self, sx: Simplex) -> Simplex:
        word, ref = sx
        inner_word, tgt = self.assignment[ref.id]
        return (words.concat(word, inner_word), tgt)

    def validate(self) -> None:
        for ref in self.source.nondegenerate():
            if ref.id not in self.assignment:
                raise ValueError(f"no assignment for {ref}")
            img = self.assignment[ref.id]
            if simplex_dim(img) != ref.dim:
                raise ValueError(f"assignment for {ref} has wrong dimension")
            if img[1] not in self.target:
                raise ValueError(f"assignment for {ref} leaves the target")
        for ref in self.source.nondegenerate():
            if ref.dim == 0:
                continue
            sx: Simplex = (EMPTY, ref)
            for i in range(ref.dim + 1):
                lhs = self.target.face(self(sx), i)
                rhs = self(self.source.face(sx, i))
                if lhs != rhs:
                    raise ValueError(
                        f"map does not commute with d_{i} on {ref}")

    def is_injective(self) -> bool:
        seen = set()
        for ref in self.source.nondegenerate():
            img = self.assignment[ref.id]
            if img in seen:
                return False
            seen.add(img)
        return True

    def is_subcomplex_inclusion(self) -> bool:
        """True when every nondegenerate simplex maps to a distinct
        nondegenerate simplex (empty word)."""
        return self.is_injective() and all(
            word == EMPTY for word, _ in self.assignment.values())

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """``self ∘ other``."""
        if other.target is not self.source:
            raise ValueError("maps are not composable")
        assignment = {
            ref.id: self(other.assignment[ref.id])
            for ref in other.source.nondegenerate()
        }
        return SimplicialMap(other.source, self.target, assignment,
                             name=f"{self.name}∘{other.name}")

    @classmethod
    def identity(cls, X: FiniteSimplicialSet) -> "SimplicialMap":
        return cls(X, X, {r.id: (EMPTY, r) for r in X.nondegenerate()}, "id")

    def to_json_dict(self) -> dict:
        return {"assignment": {
            str(i): [list(word), tgt.id]
            for i, (word, tgt) in sorted(self.assignment.items())}}

    @classmethod
    def from_json_dict(cls, data: dict, source: FiniteSimplicialSet,
                       target: FiniteSimplicialSet) -> "SimplicialMap":
        assignment = {
            int(k): (tuple(word), target.ref(tgt))
            for k, (word, tgt) in data["assignment"].items()}
        out = cls(source, target, assignment)
        out.validate()
        return out


# -- standard complexes ---------------------------------------------------


def standard_simplicial_set(p: int) -> FiniteSimplicialSet:
    """The standard simplex ``Δ[p]``; nondegenerate k-simplices are the
    strictly increasing (k+1)-subsequences of ``{0, ..., p}``."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    X = FiniteSimplicialSet(f"Delta[{p}]")
    by_verts: dict[tuple[int, ...], SimplexRef] = {}
    for k in range(p + 1):
        for verts in combinations(range(p + 1), k + 1):
            if k == 0:
                ref = X.add_simplex(0, label=verts)
            else:
                faces = []
                for i in range(k + 1):
                    sub = verts[:i] + verts[i + 1:]
                    faces.append((EMPTY, by_verts[sub]))
                ref = X.add_simplex(k, faces, label=verts)
            by_verts[verts] = ref
    return X


def vertex_ref(X: FiniteSimplicialSet, verts: tuple[int, ...]) -> SimplexRef:
    """Look up a simplex of a vertex-labelled complex by its vertex tuple."""
    for ident, label in X.labels.items():
        if label == verts:
            return X.ref(ident)
    raise KeyError(verts)


def _sub_of_standard(p: int, keep: Callable[[tuple[int, ...]], bool],
                     name: str) -> tuple[FiniteSimplicialSet, SimplicialMap]:
    """Subcomplex of ``Δ[p]`` spanned by the vertex tuples accepted by
    ``keep``, plus its inclusion."""
    ambient = standard_simplicial_set(p)
    X = FiniteSimplicialSet(name)
    into: dict[tuple[int, ...], SimplexRef] = {}
    assignment: dict[int, Simplex] = {}
    for ref in ambient.nondegenerate():
        verts = ambient.labels[ref.id]
        assert isinstance(verts, tuple)
        if not keep(verts):
            continue
        k = len(verts) - 1
        if k == 0:
            new = X.add_simplex(0, label=verts)
        else:
            faces = []
            for i in range(k + 1):
                sub = verts[:i] + verts[i + 1:]
                faces.append((EMPTY, into[sub]))
            new = X.add_simplex(k, faces, label=verts)
        into[verts] = new
        assignment[new.id] = (EMPTY, ref)
    incl = SimplicialMap(X, ambient, assignment, name=f"{name}↪Delta[{p}]")
    return X, incl


def boundary_complex(p: int) -> tuple[FiniteSimplicialSet, SimplicialMap]:
    """``∂Δ[p]`` with its inclusion; for p = 0 the boundary is empty."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    if p == 0:
        empty = FiniteSimplicialSet("Boundary[0]")
        return empty, SimplicialMap(empty, standard_simplicial_set(0), {},
                                    "∅↪Delta[0]")
    return _sub_of_standard(p, lambda v: len(v) <= p, f"Boundary[{p}]")


def horn_complex(p: int, k: int) -> tuple[FiniteSimplicialSet, SimplicialMap]:
    """``Λ[p, k]``: all proper faces except the one opposite vertex ``k``."""
    if p < 1:
        raise ValueError("horns need p >= 1")
    if not 0 <= k <= p:
        raise ValueError(f"horn index {k} out of range")
    missing = set(i for i in range(p + 1) if i != k)

    # faces of the horn: proper faces not containing the facet opposite k
    def keep(v: tuple[int, ...]) -> bool:
        return len(v) <= p and not missing <= set(v)

    return _sub_of_standard(p, keep, f"Horn[{p},{k}]")


def enumerate_simplices(X: FiniteSimplicialSet, n: int) -> list[Simplex]:
    """All ``n``-simplices of ``X`` including degenerate ones."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(X.simplices(n))


# -- colimits --------------------------------------------------------------


def pushout(f: SimplicialMap, g: SimplicialMap
            ) -> tuple[FiniteSimplicialSet, SimplicialMap, SimplicialMap]:
    """Pushout of ``X ←f− A −g→ B`` where ``f`` is a subcomplex inclusion.

    Returns ``(P, in_X, in_B)``.  Nondegenerate simplices of ``P`` are those
    of ``X`` not hit by ``f`` together with those of ``B``; general
    coequalizers are out of scope.
    """
    if f.source is not g.source:
        raise ValueError("pushout legs must share their source")
    if not f.is_subcomplex_inclusion():
        raise ValueError("first leg must be a subcomplex inclusion")
    X, B, A = f.target, g.target, f.source
    hit = {f.assignment[a.id][1].id: a for a in A.nondegenerate()}

    P = FiniteSimplicialSet(f"{X.name}∪{B.name}")
    ax: dict[int, Simplex] = {}   # X-nondeg id -> simplex of P
    ab: dict[int, Simplex] = {}   # B-nondeg id -> simplex of P

    def push_b(sx: Simplex) -> Simplex:
        word, ref = sx
        w2, tgt = ab[ref.id]
        return (words.concat(word, w2), tgt)

    for ref in B.nondegenerate():
        if ref.dim == 0:
            ab[ref.id] = (EMPTY, P.add_simplex(0, label=B.labels.get(ref.id)))
        else:
            faces = [push_b(B.face((EMPTY, ref), i)) for i in range(ref.dim + 1)]
            ab[ref.id] = (EMPTY, P.add_simplex(ref.dim, faces,
                                               label=B.labels.get(ref.id)))

    def push_x(sx: Simplex) -> Simplex:
        word, ref = sx
        w2, tgt = ax[ref.id]
        return (words.concat(word, w2), tgt)

    for ref in X.nondegenerate():
        if ref.id in hit:
            a = hit[ref.id]
            ax[ref.id] = push_b(g.assignment[a.id])
            continue
        if ref.dim == 0:
            ax[ref.id] = (EMPTY, P.add_simplex(0, label=X.labels.get(ref.id)))
        else:
            faces = [push_x(X.face((EMPTY, ref), i)) for i in range(ref.dim + 1)]
            ax[ref.id] = (EMPTY, P.add_simplex(ref.dim, faces,
                                               label=X.labels.get(ref.id)))

    in_x = SimplicialMap(X, P, {r.id: ax[r.id] for r in X.nondegenerate()}, "in_X")
    in_b = SimplicialMap(B, P, {r.id: ab[r.id] for r in B.nondegenerate()}, "in_B")
    return P, in_x, in_b


def cone(L: FiniteSimplicialSet) -> tuple[FiniteSimplicialSet, SimplicialMap,
                                          SimplexRef]:
    """The cone on ``L``: apex, a copy of ``L``, and one (n+1)-cell per
    nondegenerate n-cell, with the apex at vertex 0.

    Returns ``(CL, base_inclusion, apex)``.
    """
    C = FiniteSimplicialSet(f"Cone({L.name})")
    apex = C.add_simplex(0, label="apex")
    base: dict[int, Simplex] = {}

    def push_base(sx: Simplex) -> Simplex:
        word, ref = sx
        w2, tgt = base[ref.id]
        return (words.concat(word, w2), tgt)

    lifted: dict[int, Simplex] = {}

    def push_cone(sx: Simplex) -> Simplex:
        # c(s_j x) = s_{j+1} c(x): shift the word up by one
        word, ref = sx
        w2, tgt = lifted[ref.id]
        shifted = tuple(j + 1 for j in word)
        return (words.concat(shifted, w2), tgt)

    for ref in L.nondegenerate():
        if ref.dim == 0:
            base[ref.id] = (EMPTY, C.add_simplex(0, label=L.labels.get(ref.id)))
        else:
            faces = [push_base(L.face((EMPTY, ref), i))
                     for i in range(ref.dim + 1)]
            base[ref.id] = (EMPTY, C.add_simplex(ref.dim, faces,
                                                 label=L.labels.get(ref.id)))
    for ref in L.nondegenerate():
        n = ref.dim
        faces = [base[ref.id]]
        if n == 0:
            faces.append((EMPTY, apex))
        else:
            for i in range(1, n + 2):
                faces.append(push_cone(L.face((EMPTY, ref), i - 1)))
        lifted[ref.id] = (EMPTY, C.add_simplex(n + 1, faces))

    incl = SimplicialMap(L, C, {r.id: base[r.id] for r in L.nondegenerate()},
                         "base")
    return C, incl, apex


# -- map enumeration and bounded Kan checks --------------------------------


def enumerate_maps(A: FiniteSimplicialSet, X: FiniteSimplicialSet,
                   pinned: Optional[dict[int, Simplex]] = None,
                   limit: Optional[int] = None,
                   cell_filter: Optional[Callable[[SimplexRef, Simplex], bool]] = None,
                   ) -> Iterator[SimplicialMap]:
    """All simplicial maps ``A → X`` by dimension-ordered backtracking.

    ``pinned`` fixes the image of selected nondegenerate simplices of ``A``;
    ``cell_filter`` prunes candidate images cell by cell.
    """
    order = A.nondegenerate()
    candidates: dict[int, list[Simplex]] = {}
    for ref in order:
        candidates[ref.dim] = candidates.get(ref.dim) or enumerate_simplices(X, ref.dim)

    assignment: dict[int, Simplex] = {}
    count = 0

    def consistent(ref: SimplexRef, img: Simplex) -> bool:
        if cell_filter is not None and not cell_filter(ref, img):
            return False
        if ref.dim == 0:
            return True
        for i in range(ref.dim + 1):
            w, tgt = A.face((EMPTY, ref), i)
            if tgt.id not in assignment:
                continue
            iw, itgt = assignment[tgt.id]
            expect = (words.concat(w, iw), itgt)
            if X.face(img, i) != expect:
                return False
        return True

    def rec(pos: int) -> Iterator[SimplicialMap]:
        nonlocal count
        if limit is not None and count >= limit:
            return
        if pos == len(order):
            count += 1
            yield SimplicialMap(A, X, dict(assignment))
            return
        ref = order[pos]
        opts = ([pinned[ref.id]] if pinned and ref.id in pinned
                else candidates[ref.dim])
        for img in opts:
            if consistent(ref, img):
                assignment[ref.id] = img
                yield from rec(pos + 1)
                del assignment[ref.id]

    yield from rec(0)


def horn_fillers(X: FiniteSimplicialSet, horn_map: SimplicialMap,
                 p: int, k: int) -> list[Simplex]:
    """All p-simplices of ``X`` filling a horn map ``Λ[p,k] → X``."""
    A = horn_map.source
    fillers = []
    for z in enumerate_simplices(X, p):
        ok = True
        for i in range(p + 1):
            if i == k:
                continue
            facet = tuple(j for j in range(p + 1) if j != i)
            img = horn_map.assignment[vertex_ref(A, facet).id]
            if X.face(z, i) != img:
                ok = False
                break
        if ok:
            fillers.append(z)
    return fillers


def is_kan_up_to(X: FiniteSimplicialSet, n_max: int) -> list[dict]:
    """For every horn map ``Λ[p,k] → X`` with p <= n_max, report whether an
    extension to ``Δ[p]`` exists (brute force)."""
    report = []
    for p in range(1, n_max + 1):
        for k in range(p + 1):
            A, _ = horn_complex(p, k)
            total = 0
            unfilled = 0
            witness = None
            for hm in enumerate_maps(A, X):
                total += 1
                if not horn_fillers(X, hm, p, k):
                    unfilled += 1
                    if witness is None:
                        witness = hm.to_json_dict()
            report.append({
                "p": p, "k": k, "maps": total, "unfillable": unfilled,
                "fillable": unfilled == 0, "witness": witness,
            })
    return report
