"""Evaluable deformation retractions of the standard simplices.

Three constructions, each returned as an :class:`EvaluableHomotopy`:

* ``build_halfopen_deformation(n, k)`` retracts the half-open simplex
  ``{z_k > 0}`` onto the half-open horn (the horn minus the boundary of the
  face opposite ``k``), by the inductive cone construction: a radial phase
  toward vertex ``k`` damped by an interior bump, then a staged retraction
  of the boundary collar.

* ``build_full_horn_deformation(n, k)`` retracts all of Δ^n onto the horn
  ``Λ^n_k``.  The half-open composite is softened near the closure of the
  face opposite ``k`` so it extends to the whole simplex, and the leftover
  shell along that face is cleaned up by good-neighborhood stages anchored
  at the face's own simplices, then a flow inside the face.

* ``build_boundary_homotopy_T(p, eps)`` is the barycenter-fixing homotopy
  that deforms the ε-collar of the boundary onto the boundary.

Everything here runs on plain float tuples; outputs are renormalized after
every stage.  The deformations push coordinates to exact floating-point
zero (the cut-offs have exactly flat ends), so the retraction contracts
hold to well below the 1e-9 test tolerance.

Every constant below was chosen so that, within one stage, the regions
where different good neighborhoods act are pairwise disjoint, while the
union of the full-effect regions still covers everything the stage must
retract; the tests check both facts on grids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from .geometry import Bary, OutOfDomain
from .steps import SmoothStep, phase_times, two_phase

Vec = tuple[float, ...]

#: interior-bump breakpoints (a_q, b_q) on the q-simplex factor: the bump is
#: 0 where min coord <= a_q and 1 where min coord >= b_q
CUT = {1: (0.25, 1.0 / 3.0), 2: (1.0 / 9.0, 0.125)}

#: central-disk threshold: the disk is {min coord >= DISK[p]}, the collar
#: A^p is its complement
DISK = {1: 0.4, 2: 0.2, 3: 0.07}

#: collar retraction stages per ambient dimension: (face_dim, eps) applied
#: to the good neighborhoods U_I(eps) of the open face_dim-simplices, in
#: decreasing face dimension
COLLAR_STAGES = {
    1: ((0, 0.45),),
    2: ((1, 0.2), (0, 0.48)),
    3: ((2, 0.09), (1, 0.2), (0, 0.48)),
}

#: softening of the collar phase near the closed face opposite the horn
#: vertex; flat zero below the first breakpoint keeps a neighborhood of
#: that face's boundary exactly fixed during the first full-horn phase
SHELL = SmoothStep(0.02, 0.04)

#: cleanup stages of the full-horn deformation, anchored at the simplices
#: of the face opposite the horn vertex: (face_dim, eps)
FAR_STAGES = {2: ((0, 0.48),), 3: ((1, 0.1), (0, 0.48))}

#: activation profile of the final in-face flow: 1 on the far face itself,
#: 0 at distance FACE_EPS from it
FACE_EPS = 0.01
FACE_RAMP = SmoothStep(0.005, 0.01)

_cut_cache: dict[int, Callable[[float], float]] = {}


def _cut(q: int) -> Callable[[float], float]:
    if q not in _cut_cache:
        _cut_cache[q] = SmoothStep(*CUT[q])
    return _cut_cache[q]


def _renorm(coords: Sequence[float]) -> Vec:
    s = sum(coords)
    return tuple(c / s for c in coords)


def _join0(x: Vec, t: float) -> Vec:
    """Reassemble a chart-0 point (1-t)(0) + t*x, renormalized."""
    if t <= 0.0:
        return (1.0,) + (0.0,) * len(x)
    return _renorm((1.0 - t,) + tuple(t * c for c in x))


def _swap(z: Vec, a: int, b: int) -> Vec:
    out = list(z)
    out[a], out[b] = out[b], out[a]
    return tuple(out)


# -- inductive half-open deformation (cone construction) ---------------------

_half_open_cache: dict[int, Callable[[Vec, float], Vec]] = {}
_collar_cache: dict[int, Callable[[Vec, float], Vec]] = {}


def half_open_core(r: int) -> Callable[[Vec, float], Vec]:
    """Deformation of ``{z_0 > 0}`` in Δ^r onto the half-open 0-horn."""
    if r in _half_open_cache:
        return _half_open_cache[r]
    if r == 1:
        def ev(v: Vec, s: float) -> Vec:
            if s <= 0.0:
                return v
            t2 = (1.0 - s) * v[1]
            return (1.0 - t2, t2)
    else:
        p = r - 1
        cut = _cut(p)
        c_disk = DISK[p]
        collar = collar_core(p)

        def ev(v: Vec, s: float) -> Vec:
            t = 1.0 - v[0]
            if t <= 0.0 or s <= 0.0:
                return v
            x = tuple(c / t for c in v[1:])
            s1, s2 = two_phase(s)
            g = cut(min(x))
            if s2 <= 0.0:
                # radial phase toward the cone vertex, active over the bump
                return _join0(x, (1.0 - g * s1) * t)
            t2 = (1.0 - g) * t
            if min(x) < c_disk:
                return _join0(collar(x, s2), t2)
            return _join0(x, t2)  # g = 1 here: already at the vertex

    _half_open_cache[r] = ev
    return ev


def _class_sets(n: int, face_dim: int, vertices: Sequence[int]) -> tuple:
    """Index sets of the open ``face_dim``-simplices spanned by ``vertices``,
    inside Δ^n."""
    return tuple(combinations(sorted(vertices), face_dim + 1))


def _stage_step(z: Vec, face_dim: int, eps: float, isets: tuple, sigma: float
                ) -> Vec:
    """One collar stage applied to ``z``: retract within the first active
    good neighborhood.  The constants make at most one set active."""
    n = len(z) - 1
    for I in isets:
        S = 0.0
        ok = True
        for i in I:
            if z[i] <= 0.0:
                ok = False
                break
            S += z[i]
        if not ok or S <= 1.0 - eps:
            continue
        J = [j for j in range(n + 1) if j not in I]
        if face_dim > 0:
            u = tuple(z[i] / S for i in I)
            g = _cut(face_dim)(min(u))
            if g <= 0.0:
                continue
            local = g * sigma
        else:
            u = (1.0,)
            local = sigma
        v = (S,) + tuple(z[j] for j in J)
        v2 = half_open_core(n - face_dim)(v, local)
        out = [0.0] * (n + 1)
        for a, i in enumerate(I):
            out[i] = v2[0] * u[a]
        for b, j in enumerate(J):
            out[j] = v2[b + 1]
        return _renorm(out)
    return z


def active_sets(z: Vec, face_dim: int, eps: float, isets: tuple) -> list:
    """The index sets whose stage would move ``z``; used by the disjointness
    tests."""
    n = len(z) - 1
    out = []
    for I in isets:
        if any(z[i] <= 0.0 for i in I):
            continue
        S = sum(z[i] for i in I)
        if S <= 1.0 - eps:
            continue
        if face_dim > 0:
            u = tuple(z[i] / S for i in I)
            if _cut(face_dim)(min(u)) <= 0.0:
                continue
        out.append(I)
    return out


def collar_core(p: int) -> Callable[[Vec, float], Vec]:
    """Staged retraction of the collar ``{min coord < DISK[p]}`` of Δ^p onto
    the boundary, fixing the boundary pointwise."""
    if p in _collar_cache:
        return _collar_cache[p]
    stages = [(fd, eps, _class_sets(p, fd, range(p + 1)))
              for fd, eps in COLLAR_STAGES[p]]
    n_stages = len(stages)

    def ev(x: Vec, s: float) -> Vec:
        if s <= 0.0:
            return x
        for (fd, eps, isets), sl in zip(stages, phase_times(s, n_stages)):
            if sl <= 0.0:
                break
            x = _stage_step(x, fd, eps, isets, sl)
        return x

    _collar_cache[p] = ev
    return ev


# -- full-horn deformation ----------------------------------------------------


def _full_horn_core(n: int) -> Callable[[Vec, float], Vec]:
    """Deformation of Δ^n onto the horn at vertex 0."""
    if n == 1:
        def ev1(z: Vec, s: float) -> Vec:
            t2 = (1.0 - s) * z[1]
            return (1.0 - t2, t2)
        return ev1

    p = n - 1
    cut = _cut(p)
    c_disk = DISK[p]
    collar = collar_core(p)
    far_stages = [(fd, eps, _class_sets(n, fd, range(1, n + 1)))
                  for fd, eps in FAR_STAGES[n]]
    n_phases = 2 + len(far_stages)

    def soften(z: Vec, mx: float) -> float:
        # 1 away from the closure of the far-face boundary, flat 0 near it
        return 1.0 - (1.0 - SHELL(z[0])) * (1.0 - SHELL(mx))

    def phase_one(z: Vec, sigma: float) -> Vec:
        t = 1.0 - z[0]
        if t <= 0.0 or sigma <= 0.0:
            return z
        x = tuple(c / t for c in z[1:])
        mx = min(x)
        s1, s2 = two_phase(sigma)
        g = cut(mx)
        if s2 <= 0.0:
            return _join0(x, (1.0 - g * s1) * t)
        t2 = (1.0 - g) * t
        if mx < c_disk:
            return _join0(collar(x, soften(z, mx) * s2), t2)
        return _join0(x, t2)

    def face_flow(z: Vec, sigma: float) -> Vec:
        z0 = z[0]
        if z0 >= FACE_EPS or sigma <= 0.0:
            return z
        t = 1.0 - z0
        x = tuple(c / t for c in z[1:])
        if min(x) >= c_disk:
            return z
        x2 = collar(x, (1.0 - FACE_RAMP(z0)) * sigma)
        return _join0(x2, t)

    def ev(z: Vec, s: float) -> Vec:
        if s <= 0.0:
            return z
        locs = phase_times(s, n_phases)
        z = phase_one(z, locs[0])
        for (fd, eps, isets), sl in zip(far_stages, locs[1:]):
            if sl <= 0.0:
                return z
            z = _stage_step(z, fd, eps, isets, sl)
        return face_flow(z, locs[-1])

    return ev


# -- public wrappers ----------------------------------------------------------


@dataclass
class EvaluableHomotopy:
    """A deterministic homotopy ``(point, s) -> point`` with a declared
    domain and named stage schedule."""

    name: str
    domain: str
    p: int
    schedule: tuple[tuple[str, tuple[float, float]], ...]
    _eval: Callable[[Vec, float], Vec] = field(repr=False)
    _domain_check: Callable[[Vec], bool] = field(repr=False, default=None)

    def __call__(self, point, s: float) -> Bary:
        z = self._point_tuple(point)
        if not 0.0 <= s <= 1.0:
            raise ValueError(f"homotopy time {s} outside [0, 1]")
        if self._domain_check is not None and not self._domain_check(z):
            raise OutOfDomain(f"point {z} outside {self.domain}")
        return Bary(self._eval(z, float(s)))

    def _point_tuple(self, point) -> Vec:
        if isinstance(point, Bary):
            coords = point.as_floats()
        else:
            coords = tuple(float(c) for c in point)
        if len(coords) != self.p + 1:
            raise ValueError(f"expected a point of Δ^{self.p}")
        return coords

    def at_time(self, s: float) -> Callable[[object], Bary]:
        return lambda point: self(point, s)

    def stage_of(self, s: float) -> str:
        for name, (lo, hi) in self.schedule:
            if lo <= s <= hi:
                return name
        return self.schedule[-1][0]


def _conjugated(core: Callable[[Vec, float], Vec], k: int
                ) -> Callable[[Vec, float], Vec]:
    if k == 0:
        return core

    def ev(z: Vec, s: float) -> Vec:
        return _swap(core(_swap(z, 0, k), s), 0, k)

    return ev


def build_halfopen_deformation(n: int, k: int) -> EvaluableHomotopy:
    """Deformation of the half-open simplex ``{z_k > 0}`` in Δ^n onto the
    half-open horn at ``k`` (Λ^n_k minus the boundary of the opposite face).
    """
    if n not in (1, 2, 3):
        raise ValueError("only dimensions 1 to 3 are built")
    if not 0 <= k <= n:
        raise ValueError(f"horn index {k} out of range")
    core = _conjugated(half_open_core(n), k)
    if n == 1:
        schedule = (("radial", (0.0, 1.0)),)
    else:
        schedule = (("radial", (0.0, 0.5)), ("collar", (0.5, 1.0)))
    return EvaluableHomotopy(
        name=f"halfopen({n},{k})",
        domain=f"half-open simplex z_{k}>0 in dim {n}",
        p=n, schedule=schedule, _eval=core,
        _domain_check=lambda z: z[k] > 0.0)


def build_full_horn_deformation(n: int, k: int) -> EvaluableHomotopy:
    """Deformation of Δ^n onto the horn ``Λ^n_k``, fixing the horn pointwise."""
    if n not in (1, 2, 3):
        raise ValueError("only dimensions 1 to 3 are built")
    if not 0 <= k <= n:
        raise ValueError(f"horn index {k} out of range")
    core = _conjugated(_full_horn_core(n), k)
    if n == 1:
        schedule = (("radial", (0.0, 1.0)),)
    else:
        names = ["softened-horn"] + [
            f"far-face-dim-{fd}" for fd, _ in FAR_STAGES[n]] + ["face-flow"]
        m = len(names)
        schedule = tuple((nm, (i / m, (i + 1) / m)) for i, nm in enumerate(names))
    return EvaluableHomotopy(
        name=f"fullhorn({n},{k})",
        domain=f"Δ^{n}",
        p=n, schedule=schedule, _eval=core)


def build_boundary_homotopy_T(p: int, eps: float) -> EvaluableHomotopy:
    """Homotopy of Δ^p fixing the barycenter, restricting to a deformation
    of the ε-collar ``{some coord <= eps}`` onto the boundary."""
    if not 1 <= p <= 3:
        raise ValueError("only dimensions 1 to 3 are built")
    if not 0.0 < eps < 1.0 / (p + 1):
        raise ValueError(f"eps={eps} outside (0, 1/{p + 1})")
    collar = collar_core(p)
    c_disk = DISK[p]
    theta_c = 1.0 - (p + 1) * c_disk      # radial position of the disk edge
    theta_mid = 0.5 * (theta_c + 1.0)
    delta = 0.25 * (1.0 - theta_c)
    push_ramp = SmoothStep(theta_mid - delta, theta_mid)
    b_rho = 1.0 - (p + 1) * eps           # theta at the collar's inner edge
    rho = SmoothStep(0.5 * b_rho, b_rho)
    bary = tuple(1.0 / (p + 1) for _ in range(p + 1))

    def ev(z: Vec, s: float) -> Vec:
        theta = 1.0 - (p + 1) * min(z)
        if theta <= 0.0 or s <= 0.0:
            return z
        local = rho(theta) * s
        if local <= 0.0:
            return z
        s1, s2 = two_phase(local)
        # radial push off the central disk, along the ray from the barycenter
        target = theta + (1.0 - push_ramp(theta)) * (theta_mid - theta)
        theta1 = theta + s1 * (target - theta)
        scale = theta1 / theta
        z = _renorm(tuple(b + scale * (c - b) for b, c in zip(bary, z)))
        if s2 <= 0.0:
            return z
        if min(z) < c_disk:
            return collar(z, s2)
        return z

    return EvaluableHomotopy(
        name=f"boundaryT({p},{eps})",
        domain=f"Δ^{p}",
        p=p,
        schedule=(("radial-push", (0.0, 0.5)), ("collar", (0.5, 1.0))),
        _eval=ev)
