"""Numeric smoothness probes through the cone-chart atlas.

A map on Δ^p is probed by composing it with a chart ``phi_i`` and a
pseudorandom polynomial curve into the chart domain, then checking that
centered finite differences converge at the expected order.  Probing is
evidence, not proof: it witnesses the affine-map smoothness of the atlas
and flags kinks, nothing more.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .geometry import Bary, phi_chart

PointMap = Callable[[Bary], object]

#: below this, a finite-difference residual is considered exact
NOISE_FLOOR = 1e-9


def _as_floats(value: object) -> tuple[float, ...]:
    if isinstance(value, Bary):
        return value.as_floats()
    if isinstance(value, (int, float, Fraction)):
        return (float(value),)
    return tuple(float(c) for c in value)  # type: ignore[arg-type]


@dataclass
class ProbeCurve:
    """Polynomial curve ``tau -> (x(tau), t(tau))`` into a chart domain.

    Coefficients are rational so the composite with an affine map stays a
    low-degree polynomial with an exactly differentiable formula.
    """

    chart: int
    x0: tuple[Fraction, ...]
    x1: tuple[Fraction, ...]
    x2: tuple[Fraction, ...]
    t0: Fraction
    t1: Fraction
    radius: float

    def x(self, tau: Fraction) -> Bary:
        return Bary(tuple(a + b * tau + c * tau * tau
                          for a, b, c in zip(self.x0, self.x1, self.x2)))

    def t(self, tau: Fraction):
        return self.t0 + self.t1 * tau

    def point(self, tau) -> Bary:
        tau = Fraction(tau).limit_denominator(1 << 40) if not isinstance(tau, Fraction) else tau
        return phi_chart(self.chart, self.x(tau), self.t(tau))


def random_curve(p: int, chart: int, rng: random.Random) -> ProbeCurve:
    """A quadratic curve staying inside the chart domain for |tau| <= radius."""
    m = p  # chart domain is Δ^{p-1} x [0,1): m coordinates on the simplex part
    base = [Fraction(rng.randrange(2, 7), 1) for _ in range(m)]
    tot = sum(base)
    x0 = tuple(b / tot for b in base)
    margin = min(x0)

    def sum_zero() -> tuple[Fraction, ...]:
        if m == 1:
            return (Fraction(0),)
        raw = [Fraction(rng.randrange(-8, 9), 16) for _ in range(m)]
        mean = sum(raw) / m
        return tuple(r - mean for r in raw)

    x1, x2 = sum_zero(), sum_zero()
    t0 = Fraction(rng.randrange(3, 8), 10)
    t1 = Fraction(rng.randrange(-4, 5), 10)
    # conservative radius keeping every coordinate positive and t in (0,1)
    denom = max(max(abs(c) for c in x1), max(abs(c) for c in x2),
                abs(t1), Fraction(1))
    radius = min(float(margin) / (4 * float(denom)),
                 float(min(t0, 1 - t0)) / (4 * float(denom) + 1e-9),
                 0.25)
    return ProbeCurve(chart, x0, x1, x2, t0, t1, radius)


@dataclass
class ProbeRecord:
    chart: int
    tau0: float
    order: int
    residual_coarse: float
    residual_fine: float
    oracle_error: Optional[float]
    passed: bool


@dataclass
class ProbeReport:
    p: int
    order: int
    tol: float
    seed: int
    records: list[ProbeRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def max_oracle_error(self) -> float:
        errs = [r.oracle_error for r in self.records if r.oracle_error is not None]
        return max(errs) if errs else 0.0

    def failures(self) -> list[ProbeRecord]:
        return [r for r in self.records if not r.passed]


def _stencil(F: Callable[[float], tuple[float, ...]], tau0: float, h: float,
             order: int) -> tuple[float, ...]:
    if order == 1:
        lo, hi = F(tau0 - h), F(tau0 + h)
        return tuple((b - a) / (2 * h) for a, b in zip(lo, hi))
    lo, mid, hi = F(tau0 - h), F(tau0), F(tau0 + h)
    return tuple((a - 2 * b + c) / (h * h) for a, b, c in zip(lo, mid, hi))


def smoothness_probe(map_eval: PointMap, p: int, order: int, tol: float,
                     seed: int, curves: int = 3,
                     oracle: Optional[Callable[[ProbeCurve, float], Sequence[float]]] = None,
                     ) -> ProbeReport:
    """Probe ``map_eval`` on Δ^p through every chart.

    ``oracle``, when given, maps ``(curve, tau0)`` to the exact derivative of
    the chart-composed curve (first derivative only); the probe then also
    checks the finite-difference estimate against it within ``tol``.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    rng = random.Random(seed)
    report = ProbeReport(p=p, order=order, tol=tol, seed=seed)
    for chart in range(p + 1):
        for _ in range(curves):
            curve = random_curve(p, chart, rng)

            def F(tau: float) -> tuple[float, ...]:
                return _as_floats(map_eval(curve.point(tau)))

            for frac_pos in (0.0, 0.5, -0.5):
                tau0 = curve.radius * frac_pos
                h0 = curve.radius / 8
                d_h = _stencil(F, tau0, h0, order)
                d_h2 = _stencil(F, tau0, h0 / 2, order)
                d_h4 = _stencil(F, tau0, h0 / 4, order)
                e1 = max(abs(a - b) for a, b in zip(d_h, d_h2))
                e2 = max(abs(a - b) for a, b in zip(d_h2, d_h4))
                scale = 1.0 + max(abs(c) for c in d_h2)
                floor = NOISE_FLOOR * scale
                converges = e2 <= max(e1 / 2.0, floor)
                oracle_err = None
                if oracle is not None and order == 1:
                    exact = oracle(curve, tau0)
                    # Richardson-extrapolated estimate
                    best = tuple((4 * b - a) / 3 for a, b in zip(d_h, d_h2))
                    oracle_err = max(abs(a - b) for a, b in zip(best, exact))
                    converges = converges and oracle_err <= tol
                report.records.append(ProbeRecord(
                    chart=chart, tau0=tau0, order=order,
                    residual_coarse=e1, residual_fine=e2,
                    oracle_error=oracle_err, passed=converges))
    return report


def affine_curve_derivative(matrix: Sequence[Sequence[object]],
                            curve: ProbeCurve, tau0: float) -> tuple[float, ...]:
    """Exact derivative of (affine map) ∘ phi_chart ∘ curve at tau0.

    The chart composite is polynomial with rational coefficients; its
    derivative is computed symbolically and pushed through the matrix.
    """
    tau = Fraction(tau0).limit_denominator(1 << 40)
    i = curve.chart
    m = len(curve.x0)
    # chart coordinates z_j(tau) and their exact derivatives
    x = [a + b * tau + c * tau * tau
         for a, b, c in zip(curve.x0, curve.x1, curve.x2)]
    dx = [b + 2 * c * tau for b, c in zip(curve.x1, curve.x2)]
    t = curve.t0 + curve.t1 * tau
    dt = curve.t1
    z = []
    dz = []
    for j in range(m + 1):
        if j == i:
            z.append(1 - t)
            dz.append(-dt)
        else:
            k = j if j < i else j - 1
            z.append(t * x[k])
            dz.append(dt * x[k] + t * dx[k])
    rows = len(matrix)
    out = []
    for r in range(rows):
        out.append(float(sum(Fraction(matrix[r][c]) * dz[c]
                             for c in range(m + 1))))
    return tuple(out)
