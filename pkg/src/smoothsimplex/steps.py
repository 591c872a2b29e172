"""Smooth cut-off functions and homotopy reparametrization.

``SmoothStep(a, b)`` is the classical bump-quotient step: identically 0 on
(-inf, a], identically 1 on [b, inf), monotone and C-infinity.  The flat
ends are exact in floating point, which the staged homotopies rely on to
produce exact fixed points and exact landings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _bump(t: float) -> float:
    # exp(-1/t) for t > 0, flat zero otherwise
    if t <= 0.0:
        return 0.0
    return math.exp(-1.0 / t)


@dataclass(frozen=True)
class SmoothStep:
    a: float
    b: float

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise ValueError(f"breakpoints must satisfy a < b, got {self.a}, {self.b}")

    def __call__(self, t: float) -> float:
        t = float(t)
        if t <= self.a:
            return 0.0
        if t >= self.b:
            return 1.0
        u = (t - self.a) / (self.b - self.a)
        num = _bump(u)
        return num / (num + _bump(1.0 - u))


#: reparametrization used to splice two homotopies smoothly; flat near the
#: splice so stage boundaries carry exact values
SPLICE = SmoothStep(0.1, 0.9)


def two_phase(s: float) -> tuple[float, float]:
    """Local times ``(s1, s2)`` of a two-stage composite at global time s."""
    return SPLICE(2.0 * s), SPLICE(2.0 * s - 1.0)


def phase_times(s: float, n: int) -> list[float]:
    """Local times of an n-stage composite on equal subintervals of [0, 1]."""
    return [SPLICE(n * s - k) for k in range(n)]
