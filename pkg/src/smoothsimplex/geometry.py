"""Geometry of the standard p-simplex.

Points are barycentric tuples.  Everything in this module is rational
arithmetic whenever the inputs are rational (``fractions.Fraction`` or
``int``); the round-trip identities for charts and good neighborhoods are
then exact, and the tests assert them with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

Number = Union[int, float, Fraction]

FLOAT_TOL = 1e-12


class OutOfDomain(ValueError):
    """A point fell outside the declared domain of a chart or map."""


def _is_exact(coords: Iterable[Number]) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in coords)


@dataclass(frozen=True)
class Bary:
    """A point of Δ^p in barycentric coordinates ``(x_0, ..., x_p)``."""

    coords: tuple[Number, ...]

    def __post_init__(self) -> None:
        if not self.coords:
            raise ValueError("a barycentric point needs at least one coordinate")
        total = sum(self.coords)
        if self.exact:
            if total != 1:
                raise ValueError(f"coordinates sum to {total}, not 1")
            if any(c < 0 for c in self.coords):
                raise ValueError("negative barycentric coordinate")
        else:
            if abs(total - 1) > FLOAT_TOL:
                raise ValueError(f"coordinate sum {total} is off by more than {FLOAT_TOL}")
            if any(c < -FLOAT_TOL for c in self.coords):
                raise ValueError("negative barycentric coordinate")

    @property
    def p(self) -> int:
        return len(self.coords) - 1

    @property
    def exact(self) -> bool:
        return _is_exact(self.coords)

    def __getitem__(self, i: int) -> Number:
        return self.coords[i]

    def __len__(self) -> int:
        return len(self.coords)

    def min_coord(self) -> Number:
        return min(self.coords)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coords)

    @classmethod
    def of(cls, *coords: Number) -> "Bary":
        return cls(tuple(coords))

    @classmethod
    def vertex(cls, p: int, i: int) -> "Bary":
        if not 0 <= i <= p:
            raise ValueError(f"vertex {i} out of range")
        return cls(tuple(1 if j == i else 0 for j in range(p + 1)))

    @classmethod
    def barycenter(cls, p: int) -> "Bary":
        return cls(tuple(Fraction(1, p + 1) for _ in range(p + 1)))

    def is_close(self, other: "Bary", tol: float = FLOAT_TOL) -> bool:
        if len(self) != len(other):
            return False
        return all(abs(float(a) - float(b)) <= tol
                   for a, b in zip(self.coords, other.coords))


def barycentric_grid(p: int, steps: int) -> list[Bary]:
    """All points of Δ^p with coordinates in (1/steps)·Z, lexicographic."""
    out: list[Bary] = []

    def rec(prefix: list[int], left: int) -> None:
        if len(prefix) == p:
            out.append(Bary(tuple(Fraction(c, steps) for c in prefix + [left])))
            return
        for c in range(left + 1):
            rec(prefix + [c], left - c)

    rec([], steps)
    return out


# -- affine maps ------------------------------------------------------------


@dataclass(frozen=True)
class AffineSimplexMap:
    """An affine map Δ^p → Δ^q, stored by the images of the vertices."""

    columns: tuple[Bary, ...]

    def __post_init__(self) -> None:
        q = self.columns[0].p
        if any(c.p != q for c in self.columns):
            raise ValueError("all vertex images must share a dimension")

    @property
    def p(self) -> int:
        return len(self.columns) - 1

    @property
    def q(self) -> int:
        return self.columns[0].p

    def __call__(self, x: Bary) -> Bary:
        if x.p != self.p:
            raise ValueError(f"expected a point of Δ^{self.p}")
        coords = [0] * (self.q + 1)
        for weight, col in zip(x.coords, self.columns):
            for r, c in enumerate(col.coords):
                coords[r] += weight * c
        return Bary(tuple(coords))

    def compose(self, other: "AffineSimplexMap") -> "AffineSimplexMap":
        """``self ∘ other``."""
        if other.q != self.p:
            raise ValueError("dimension mismatch in composition")
        return AffineSimplexMap(tuple(self(col) for col in other.columns))

    def matrix(self) -> tuple[tuple[Number, ...], ...]:
        """(q+1) x (p+1) matrix with the vertex images as columns."""
        return tuple(tuple(col[r] for col in self.columns)
                     for r in range(self.q + 1))

    @classmethod
    def identity(cls, p: int) -> "AffineSimplexMap":
        return cls(tuple(Bary.vertex(p, i) for i in range(p + 1)))

    @classmethod
    def face(cls, p: int, i: int) -> "AffineSimplexMap":
        """``d^i : Δ^{p-1} → Δ^p``, skipping vertex i."""
        if not 0 <= i <= p:
            raise ValueError(f"face index {i} out of range")
        return cls(tuple(Bary.vertex(p, k if k < i else k + 1)
                         for k in range(p)))

    @classmethod
    def degeneracy(cls, p: int, k: int) -> "AffineSimplexMap":
        """``s^k : Δ^{p+1} → Δ^p``, collapsing vertices k, k+1."""
        if not 0 <= k <= p:
            raise ValueError(f"degeneracy index {k} out of range")
        return cls(tuple(Bary.vertex(p, i if i <= k else i - 1)
                         for i in range(p + 2)))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "AffineSimplexMap":
        """The affine extension of a vertex permutation of Δ^p."""
        p = len(perm) - 1
        if sorted(perm) != list(range(p + 1)):
            raise ValueError("not a permutation")
        return cls(tuple(Bary.vertex(p, perm[i]) for i in range(p + 1)))

    @classmethod
    def transposition(cls, p: int, a: int, b: int) -> "AffineSimplexMap":
        perm = list(range(p + 1))
        perm[a], perm[b] = perm[b], perm[a]
        return cls.permutation(perm)


def affine(kind: str, **kw) -> AffineSimplexMap:
    """Dispatcher for the map kinds: 'face', 'degeneracy', 'permutation',
    'matrix'."""
    if kind == "face":
        return AffineSimplexMap.face(kw["p"], kw["i"])
    if kind == "degeneracy":
        return AffineSimplexMap.degeneracy(kw["p"], kw["k"])
    if kind == "permutation":
        return AffineSimplexMap.permutation(kw["perm"])
    if kind == "matrix":
        return AffineSimplexMap(tuple(Bary(tuple(col)) for col in kw["columns"]))
    raise ValueError(f"unknown affine map kind {kind!r}")


# -- cone charts ------------------------------------------------------------


@dataclass(frozen=True)
class ChartDecomp:
    """Chart coordinates of a point: ``phi_i(x, t)`` reproduces it."""

    i: int
    x: Bary
    t: Number


def phi_chart(i: int, x: Bary, t: Number) -> Bary:
    """The chart map ``phi_i(x, t) = (1-t)(i) + t d^i(x)`` into Δ^p."""
    p = x.p + 1
    if not 0 <= i <= p:
        raise ValueError(f"chart index {i} out of range")
    if not 0 <= t <= 1:
        raise OutOfDomain(f"chart parameter t={t} outside [0, 1)")
    coords = []
    for j in range(p + 1):
        if j == i:
            coords.append(1 - t)
        else:
            coords.append(t * x[j if j < i else j - 1])
    return Bary(tuple(coords))


def chart_decompose(z: Bary, i: int) -> ChartDecomp:
    """Invert ``phi_i`` on the half-open simplex ``z_i > 0``.

    At the cone vertex (t = 0) the fiber collapses; the barycenter is
    returned as the representative so the round trip is still exact.
    """
    p = z.p
    if not 0 <= i <= p:
        raise ValueError(f"chart index {i} out of range")
    zi = z[i]
    if (zi == 0) if z.exact else (float(zi) <= FLOAT_TOL):
        raise OutOfDomain(f"point lies on the face opposite vertex {i}")
    t = 1 - zi
    if t == 0:
        return ChartDecomp(i, Bary.barycenter(p - 1), 0)
    rest = tuple(z[j] for j in range(p + 1) if j != i)
    x = Bary(tuple(c / t for c in rest))
    return ChartDecomp(i, x, t)


def chart_transition(i: int, j: int, y: Bary, tau: Number, t: Number
                     ) -> tuple[Bary, Number, Number]:
    """Transition between charts i and j of Δ^p, p = y.p + 2.

    The source point is ``phi_i`` applied to the face point
    ``(1-tau)(j) + tau * y``; the return value ``(y, s, t')`` satisfies
    ``phi_j((1-s)(i) + s*y, t') = phi_i((1-tau)(j) + tau*y, t)``.
    """
    if i == j:
        raise ValueError("transition needs two distinct charts")
    if not (0 < tau <= 1):
        raise OutOfDomain(f"tau={tau} outside (0, 1]")
    if not (0 < t < 1):
        raise OutOfDomain(f"t={t} outside (0, 1)")
    denom = 1 - t * (1 - tau)
    assert denom > 0, "transition denominator vanished inside its domain"
    s = t * tau / denom
    t_new = 1 - t * (1 - tau)
    return (y, s, t_new)


def transition_source(p: int, i: int, j: int, y: Bary, tau: Number) -> Bary:
    """The chart-i input ``(1-tau)(j) + tau*y`` as a point of Δ^{p-1}."""
    jj = j if j < i else j - 1
    return phi_chart(jj, y, tau)


def transition_target(p: int, i: int, j: int, y: Bary, s: Number) -> Bary:
    """The chart-j input ``(1-s)(i) + s*y`` as a point of Δ^{p-1}."""
    ii = i if i < j else i - 1
    return phi_chart(ii, y, s)


def transition_identity_gap(p: int, i: int, j: int, y: Bary, tau: Number,
                            t: Number) -> Number:
    """Max-norm difference of the two sides of the chart-compatibility
    identity; identically zero in rational arithmetic."""
    _, s, t_new = chart_transition(i, j, y, tau, t)
    lhs = phi_chart(i, transition_source(p, i, j, y, tau), t)
    rhs = phi_chart(j, transition_target(p, i, j, y, s), t_new)
    return max(abs(a - b) for a, b in zip(lhs.coords, rhs.coords))


# -- good neighborhoods of open simplices -------------------------------------


def _check_index_set(I: Sequence[int], p: int) -> tuple[int, ...]:
    I = tuple(sorted(I))
    if not I or len(set(I)) != len(I):
        raise ValueError("index set must be nonempty without repeats")
    if I[0] < 0 or I[-1] > p or len(I) > p:
        raise ValueError(f"index set {I} invalid for Δ^{p}")
    return I


def in_good_neighborhood(z: Bary, I: Sequence[int], eps: Number) -> bool:
    """Membership in ``U_I(eps)``: x_i > 0 on I and sum over I > 1 - eps."""
    I = _check_index_set(I, z.p)
    if any(z[i] <= 0 for i in I):
        return False
    return sum(z[i] for i in I) > 1 - eps


def good_nbhd_Phi(I: Sequence[int], z: Bary) -> tuple[Bary, Bary]:
    """The diffeomorphism ``Φ_I : U_I → (interior k-simplex) x (half-open
    simplex)``, returned as ``(u, v)`` with ``v_0`` the weight of the I-face.
    """
    p = z.p
    I = _check_index_set(I, p)
    if any(z[i] <= 0 for i in I):
        raise OutOfDomain(f"point not in U_{I}: a coordinate on I vanishes")
    S = sum(z[i] for i in I)
    u = Bary(tuple(z[i] / S for i in I))
    J = [j for j in range(p + 1) if j not in I]
    v = Bary((S,) + tuple(z[j] for j in J))
    return u, v


def good_nbhd_Phi_inverse(I: Sequence[int], u: Bary, v: Bary, p: int) -> Bary:
    """Inverse of ``Φ_I``: ``x_{i_a} = v_0 u_a`` and ``x_{j_b} = v_b``."""
    I = _check_index_set(I, p)
    if u.p != len(I) - 1 or v.p != p - len(I) + 1:
        raise ValueError("component dimensions do not match I")
    if (v[0] == 0) if v.exact else (float(v[0]) <= FLOAT_TOL):
        raise OutOfDomain("half-open component collapsed (v_0 = 0)")
    J = [j for j in range(p + 1) if j not in I]
    coords: list[Number] = [0] * (p + 1)
    for a, i in enumerate(I):
        coords[i] = v[0] * u[a]
    for b, j in enumerate(J):
        coords[j] = v[b + 1]
    return Bary(tuple(coords))


# -- concatenation plumbing for homotopy-class products -----------------------


def beta_map(p: int) -> Callable[[Bary, Number], Bary]:
    """``beta(x, t) = (x_0, ..., x_{p-1}, t x_p, (1-t) x_p)``: the affine
    homotopy Δ^p x I → Δ^{p+1} splitting the last coordinate."""
    if p < 1:
        raise ValueError("beta needs p >= 1")

    def ev(x: Bary, t: Number) -> Bary:
        if x.p != p:
            raise ValueError(f"expected a point of Δ^{p}")
        if not 0 <= t <= 1:
            raise OutOfDomain("time outside [0, 1]")
        return Bary(x.coords[:-1] + (t * x[p], (1 - t) * x[p]))

    return ev


def gamma_map(p: int) -> Callable[[Bary], Bary]:
    """The fold ``gamma : Δ^{p+1} → Δ^p_{(p-1)} ∪ Δ^p_{(p+1)}``.

    The image point is returned in the coordinates of Δ^{p+1}; exactly one
    of the coordinates p-1, p+1 vanishes, naming the side of the wedge.
    The two branch formulas agree on the seam ``x_{p+1} = x_{p-1}``.
    """
    if p < 1:
        raise ValueError("gamma needs p >= 1")

    def ev(z: Bary) -> Bary:
        if z.p != p + 1:
            raise ValueError(f"expected a point of Δ^{p + 1}")
        head = z.coords[:p - 1]
        if z[p + 1] >= z[p - 1]:
            return Bary(head + (0, z[p] + 2 * z[p - 1], z[p + 1] - z[p - 1]))
        return Bary(head + (z[p - 1] - z[p + 1], z[p] + 2 * z[p + 1], 0))

    return ev


@dataclass(frozen=True)
class BasedMap:
    """An evaluable map on Δ^p that is constant (= base) near the ε-collar
    of the boundary."""

    p: int
    eval: Callable[[Bary], object]
    base: object
    eps: float

    def __call__(self, x: Bary) -> object:
        return self.eval(x)


def concat_product(f: BasedMap, g: BasedMap) -> Callable[[Bary], object]:
    """The concatenation ``(f + g) ∘ gamma ∘ d^p`` on Δ^p.

    ``f`` is used on the ``Δ^p_{(p-1)}`` side of the wedge and ``g`` on the
    ``Δ^p_{(p+1)}`` side; the two agree (with value the base point) on the
    seam because both maps are constant near their boundary collars.
    """
    if f.p != g.p:
        raise ValueError("concatenation needs maps on the same simplex")
    fb, gb = f.base, g.base
    same = fb == gb
    if not same:
        try:
            same = all(abs(float(a) - float(b)) <= FLOAT_TOL
                       for a, b in zip(fb.coords, gb.coords))  # type: ignore[union-attr]
        except AttributeError:
            same = False
    if not same:
        raise ValueError("base points of the two maps do not match")
    p = f.p
    dp = AffineSimplexMap.face(p + 1, p)
    gamma = gamma_map(p)

    def ev(x: Bary) -> object:
        y = gamma(dp(x))
        if y[p + 1] == 0 or (not y.exact and float(y[p + 1]) <= FLOAT_TOL):
            # on the (p+1)-face: g's side
            side = tuple(y[j] for j in range(p + 2) if j != p + 1)
            return g(Bary(side))
        side = tuple(y[j] for j in range(p + 2) if j != p - 1)
        return f(Bary(side))

    return ev
