"""Lifting-property checks, bounded gluing factorizations, numeric horn
filling, and elementary homotopy invariants of finite simplicial sets.

The gluing factorization computes the finite stages ``G^n`` of the
infinite construction; non-termination is expected (each glued cell can
create new unsolved problems) and is reported honestly through the
residual-problem lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .geometry import Bary
from .homotopy import build_full_horn_deformation
from .simplicial import (
    EMPTY,
    FiniteSimplicialSet,
    Simplex,
    SimplexRef,
    SimplicialMap,
    boundary_complex,
    enumerate_maps,
    horn_complex,
    pushout,
)


@dataclass(frozen=True)
class Generator:
    """One generating inclusion: ``∂Δ[p] ↪ Δ[p]`` or ``Λ[p,k] ↪ Δ[p]``."""

    kind: str
    p: int
    k: Optional[int]
    incl: SimplicialMap = field(compare=False)

    @property
    def name(self) -> str:
        if self.kind == "I":
            return f"I({self.p})"
        return f"J({self.p},{self.k})"


@dataclass(frozen=True)
class GeneratingSet:
    """The generating cofibrations ``I`` or trivial cofibrations ``J``,
    truncated at ``max_dim``."""

    kind: str
    max_dim: int

    def __post_init__(self) -> None:
        if self.kind not in ("I", "J"):
            raise ValueError("kind must be 'I' or 'J'")
        if self.max_dim < 0:
            raise ValueError("max_dim must be nonnegative")

    def generators(self) -> list[Generator]:
        out = []
        if self.kind == "I":
            for p in range(self.max_dim + 1):
                _, incl = boundary_complex(p)
                out.append(Generator("I", p, None, incl))
        else:
            for p in range(1, self.max_dim + 1):
                for k in range(p + 1):
                    _, incl = horn_complex(p, k)
                    out.append(Generator("J", p, k, incl))
        return out


@dataclass
class LiftingProblem:
    """A commutative square from a generator to ``f``."""

    generator: Generator
    top: SimplicialMap       # A -> X
    bottom: SimplicialMap    # B -> Y
    f: SimplicialMap         # X -> Y

    def lifts(self, limit: Optional[int] = 1) -> list[SimplicialMap]:
        """Diagonal fillers ``B -> X``; commuting on both triangles."""
        A = self.generator.incl.source
        B = self.generator.incl.target
        pinned = {}
        for a in A.nondegenerate():
            word, tgt = self.generator.incl.assignment[a.id]
            assert word == EMPTY
            pinned[tgt.id] = self.top.assignment[a.id]

        def over_bottom(ref: SimplexRef, img: Simplex) -> bool:
            return self.f(img) == self.bottom.assignment[ref.id]

        return list(enumerate_maps(B, self.f.source, pinned=pinned,
                                   limit=limit, cell_filter=over_bottom))

    def has_lift(self) -> bool:
        return bool(self.lifts(limit=1))

    def to_json_dict(self) -> dict:
        return {"generator": self.generator.name,
                "top": self.top.to_json_dict(),
                "bottom": self.bottom.to_json_dict()}


def iter_lifting_problems(f: SimplicialMap, gens: GeneratingSet
                          ) -> Iterator[LiftingProblem]:
    """All commutative squares from the generating set to ``f``, in a fixed
    lexicographic order (generator, top map, bottom map)."""
    X, Y = f.source, f.target
    for gen in gens.generators():
        A = gen.incl.source
        B = gen.incl.target
        for top in enumerate_maps(A, X):
            pinned = {}
            for a in A.nondegenerate():
                _, tgt = gen.incl.assignment[a.id]
                pinned[tgt.id] = f(top.assignment[a.id])
            for bottom in enumerate_maps(B, Y, pinned=pinned):
                yield LiftingProblem(gen, top, bottom, f)


@dataclass
class RLPReport:
    gens: GeneratingSet
    checked: int
    failures: list[LiftingProblem]

    @property
    def has_rlp(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {"kind": self.gens.kind, "max_dim": self.gens.max_dim,
                "checked": self.checked,
                "failing": [p.to_json_dict() for p in self.failures]}


def rlp_check(f: SimplicialMap, gens: GeneratingSet) -> RLPReport:
    """Brute-force right-lifting-property check of ``f`` against the
    generating set, with every failing square reported."""
    failures = []
    checked = 0
    for prob in iter_lifting_problems(f, gens):
        checked += 1
        if not prob.has_lift():
            failures.append(prob)
    return RLPReport(gens, checked, failures)


# -- bounded gluing factorization ---------------------------------------------


@dataclass
class FactorizationStage:
    n: int
    complex: FiniteSimplicialSet
    attached: int
    j: SimplicialMap          # X -> G^n, a subcomplex inclusion
    q: SimplicialMap          # G^n -> Y with q ∘ j = f
    residual: list[LiftingProblem]
    birth: dict[int, int]     # cell id -> stage that created it

    def to_json_dict(self) -> dict:
        return {"stage": self.n, "attached": self.attached,
                "cells": sum(self.complex.counts()),
                "residual_problems": [p.to_json_dict() for p in self.residual]}


def igc_factor(f: SimplicialMap, gens: GeneratingSet, max_stages: int,
               max_problems: Optional[int] = None) -> list[FactorizationStage]:
    """Finite stages of the gluing factorization of ``f`` through cells of
    the generating set.

    Stage ``n+1`` attaches one cell per unsolved lifting problem of ``q_n``.
    The run stops early once ``q_n`` has the right lifting property up to
    the generating set's dimension bound; otherwise the last stage carries
    the still-unsolved problems.
    """
    if max_stages < 0:
        raise ValueError("max_stages must be nonnegative")

    def unsolved(q: SimplicialMap) -> list[LiftingProblem]:
        out = []
        for prob in iter_lifting_problems(q, gens):
            if not prob.has_lift():
                out.append(prob)
                if max_problems is not None and len(out) >= max_problems:
                    break
        return out

    j = SimplicialMap.identity(f.source)
    q = f
    birth = {r.id: 0 for r in f.source.nondegenerate()}
    stages = [FactorizationStage(0, f.source, 0, j, q, unsolved(f), birth)]
    for n in range(1, max_stages + 1):
        residual = stages[-1].residual
        if not residual:
            break
        cur = stages[-1].complex
        emb = SimplicialMap.identity(cur)
        cell_pushes: list[tuple[SimplicialMap, SimplicialMap]] = []
        for prob in residual:
            top_cur = emb.compose(prob.top)
            P, in_cell, in_old = pushout(prob.generator.incl, top_cur)
            emb = in_old.compose(emb)
            cell_pushes = [(in_old.compose(m), b) for m, b in cell_pushes]
            cell_pushes.append((in_cell, prob.bottom))
        G = emb.target
        j_n = emb.compose(stages[-1].j)
        assignment = {}
        for r in stages[-1].complex.nondegenerate():
            word, tgt = emb.assignment[r.id]
            assert word == EMPTY
            assignment[tgt.id] = stages[-1].q.assignment[r.id]
        for cell_map, bottom in cell_pushes:
            for r in cell_map.source.nondegenerate():
                word, tgt = cell_map.assignment[r.id]
                if word == EMPTY and tgt.id not in assignment:
                    assignment[tgt.id] = bottom.assignment[r.id]
        q_n = SimplicialMap(G, f.target, assignment, name=f"q_{n}")
        q_n.validate()
        birth_n = {}
        for r in stages[-1].complex.nondegenerate():
            _, tgt = emb.assignment[r.id]
            birth_n[tgt.id] = stages[-1].birth[r.id]
        for r in G.nondegenerate():
            birth_n.setdefault(r.id, n)
        attached = sum(1 for s in birth_n.values() if s == n)
        stages.append(FactorizationStage(
            n, G, attached, j_n, q_n, unsolved(q_n), birth_n))
    return stages


def factors_through_stage(stages: list[FactorizationStage],
                          m: SimplicialMap) -> int:
    """Least stage of a gluing tower that a map into its top complex factors
    through (possible for every map from a finite complex)."""
    top = stages[-1]
    if m.target is not top.complex:
        raise ValueError("map does not land in the tower's top stage")
    needed = 0
    for r in m.source.nondegenerate():
        _, tgt = m.assignment[r.id]
        needed = max(needed, top.birth[tgt.id])
    return needed


# -- numeric horn filling -------------------------------------------------------


@dataclass
class FilledMap:
    """Extension of a map on a realized horn to the whole simplex, obtained
    by precomposing with the deformation retraction at time one."""

    p: int
    k: int
    original: Callable[[Bary], object]
    retraction: Callable[[object], Bary]

    def __call__(self, z) -> object:
        return self.original(self.retraction(z))


def fill_horn_numeric(g: Callable[[Bary], object], p: int, k: int) -> FilledMap:
    """Fill ``g : Λ^p_k -> X`` to all of Δ^p through the smooth retraction;
    the restriction back to the horn reproduces ``g``."""
    H = build_full_horn_deformation(p, k)
    return FilledMap(p, k, g, H.at_time(1.0))


# -- elementary homotopy invariants ------------------------------------------------


def pi0(X: FiniteSimplicialSet) -> tuple[int, list[tuple[int, ...]]]:
    """Connected components via edge reachability on vertices."""
    verts = X.nondegenerate(0)
    parent = {v.id: v.id for v in verts}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in X.nondegenerate(1):
        a = find(X.face((EMPTY, e), 0)[1].id)
        b = find(X.face((EMPTY, e), 1)[1].id)
        parent[a] = b
    comps: dict[int, list[int]] = {}
    for v in verts:
        comps.setdefault(find(v.id), []).append(v.id)
    out = sorted(tuple(sorted(c)) for c in comps.values())
    return len(out), out


def edge_group_rank(X: FiniteSimplicialSet) -> dict:
    """Euler-style rank of the edge-path group presentation: non-tree edges
    as generators, one relation per nondegenerate 2-simplex, independence
    counted by exact rank of the abelianized relation matrix."""
    count, comps = pi0(X)
    if count != 1:
        raise ValueError("edge_group_rank needs a connected complex")
    verts = [v.id for v in X.nondegenerate(0)]
    edges = X.nondegenerate(1)
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
    for e in edges:
        b = X.face((EMPTY, e), 0)[1].id   # terminal vertex
        a = X.face((EMPTY, e), 1)[1].id   # initial vertex
        adj[a].append((b, e.id))
        adj[b].append((a, e.id))
    tree: set[int] = set()
    seen = {min(verts)}
    queue = [min(verts)]
    while queue:
        v = queue.pop(0)
        for w, eid in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                tree.add(eid)
                queue.append(w)
    generators = [e.id for e in edges if e.id not in tree]
    gen_index = {eid: i for i, eid in enumerate(generators)}
    rows = []
    for s in X.nondegenerate(2):
        row = [Fraction(0)] * len(generators)
        for i, sign in ((2, 1), (0, 1), (1, -1)):
            word, tgt = X.face((EMPTY, s), i)
            if word != EMPTY or tgt.dim != 1:
                continue  # degenerate edge contributes nothing
            if tgt.id in gen_index:
                row[gen_index[tgt.id]] += sign
        rows.append(row)
    rank_rel = _matrix_rank(rows)
    rank = len(generators) - rank_rel
    return {"vertices": len(verts), "edges": len(edges),
            "generators": len(generators), "relations": len(rows),
            "independent_relations": rank_rel, "rank": rank}


def _matrix_rank(rows: list[list[Fraction]]) -> int:
    if not rows or not rows[0]:
        return 0
    mat = [row[:] for row in rows]
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col] / pv
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank
