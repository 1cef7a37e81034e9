"""Scalar geometry of a geodesic ball B(delta) in the round unit sphere S^n.

Everything here is a closed formula in ``n`` and ``delta``; angles are in
radians throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError

__all__ = [
    "BallGeometry",
    "sphere_area",
    "lambda_profile",
    "sin_power_integral",
    "boundary_coefficients",
    "check_dimension",
]

HALF_PI = 0.5 * math.pi


def check_dimension(n, minimum=2):
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"dimension must be an int, got {n!r}")
    if n < minimum:
        raise DomainError(f"dimension must be >= {minimum}, got {n}")
    return n


def sphere_area(k: int) -> float:
    """Area of the unit k-sphere, 2 pi^((k+1)/2) / Gamma((k+1)/2).

    Uses the exact two-step recurrence ``A_k = 2 pi / (k - 1) * A_{k-2}``
    from ``A_0 = 2`` and ``A_1 = 2 pi``, so no Gamma function is needed.
    """
    if k < 0:
        raise DomainError(f"sphere dimension must be >= 0, got {k}")
    area = 2.0 if k % 2 == 0 else 2.0 * math.pi
    for j in range(k % 2 + 2, k + 1, 2):
        area *= 2.0 * math.pi / (j - 1)
    return area


@dataclass(frozen=True)
class BallGeometry:
    """Geodesic ball of radius ``delta`` in S^n, with ``0 < delta < pi/2``."""

    n: int
    delta: float

    def __post_init__(self):
        check_dimension(self.n)
        if not (0.0 < self.delta < HALF_PI):
            raise DomainError(f"delta must lie in (0, pi/2), got {self.delta!r}")

    @cached_property
    def c(self) -> float:
        return math.cos(self.delta)

    @cached_property
    def s(self) -> float:
        return math.sin(self.delta)

    @cached_property
    def mean_curvature_bar(self) -> float:
        """Mean curvature (n-1) cot(delta) of the boundary sphere."""
        return (self.n - 1) * self.c / self.s

    @cached_property
    def omega(self) -> float:
        """Area of the unit (n-1)-sphere."""
        return sphere_area(self.n - 1)

    @cached_property
    def boundary_area(self) -> float:
        return self.omega * self.s ** (self.n - 1)

    @cached_property
    def lambda_weighted_volume(self) -> float:
        """Integral of cos(r) over the ball, equal to omega s^n / n."""
        return self.omega * self.s**self.n / self.n

    @cached_property
    def volume(self) -> float:
        return self.omega * sin_power_integral(self.n, self.delta)

    # Derivative of cos r along the outward normal at the boundary.
    @property
    def dnu_lambda(self) -> float:
        return -self.s

    @property
    def scalar_curvature(self) -> float:
        return float(self.n * (self.n - 1))


def lambda_profile(g: BallGeometry, r: float) -> float:
    """The weight cos(r) on B(delta)."""
    if not (0.0 <= r <= g.delta):
        raise DomainError(f"r must lie in [0, {g.delta}], got {r!r}")
    return math.cos(r)


# Above this value of sin^2(delta) the upward recurrence is used; below it
# the binomial series in sin(delta) converges faster than 0.9**j.
_SERIES_LIMIT = 0.9


def _sin_power_series(k: int, s: float) -> float:
    # int_0^delta sin^k = int_0^s x^k (1 - x^2)^(-1/2) dx, expanded termwise
    s2 = s * s
    coef = 1.0
    power = s ** (k + 1)
    total = power / (k + 1)
    j = 0
    while True:
        j += 1
        coef *= (2 * j - 1) / (2 * j)
        power *= s2
        term = coef * power / (k + 2 * j + 1)
        total += term
        if term <= 1e-17 * total:
            return total


def _sin_power_recurrence(k: int, delta: float, s: float, c: float) -> float:
    # I_m = (-s^(m-1) c + (m-1) I_(m-2)) / m from I_0 = delta, I_1 = 1 - cos
    if k % 2 == 0:
        val, m = delta, 0
    else:
        val, m = 2.0 * math.sin(0.5 * delta) ** 2, 1
    while m < k:
        m += 2
        val = (-(s ** (m - 1)) * c + (m - 1) * val) / m
    return val


def sin_power_integral(n: int, delta: float) -> float:
    """Return the integral of sin(t)^(n-1) over [0, delta], 0 < delta <= pi/2."""
    check_dimension(n, minimum=1)
    if not (0.0 < delta <= HALF_PI):
        raise DomainError(f"delta must lie in (0, pi/2], got {delta!r}")
    k = n - 1
    s = math.sin(delta)
    if k == 0:
        return delta
    if s * s <= _SERIES_LIMIT:
        return _sin_power_series(k, s)
    return _sin_power_recurrence(k, delta, s, math.cos(delta))


def boundary_coefficients(g: BallGeometry) -> tuple[float, float]:
    """Boundary weights of h(nu, nu)^2 and |X|^2 at the boundary sphere.

    Returns ``(A, B)`` with ``A = ((n+3)c^2 - 4) / (4s)`` and
    ``B = ((n+1)c^2 - 1) / (2s)``.
    """
    n, c, s = g.n, g.c, g.s
    return ((n + 3) * c * c - 4.0) / (4.0 * s), ((n + 1) * c * c - 1.0) / (2.0 * s)
