"""Composite Gauss-Legendre quadrature and radial test profiles on [0, delta].

Radial symmetry turns every integral over B(delta) into
``omega_{n-1} * int_0^delta f(r) sin(r)^(n-1) dr``, so one-dimensional
Gauss-Legendre with the volume weight folded into the integrand is exact
up to the rule's polynomial order.  No node sits at r = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial import legendre
from scipy.interpolate import CubicHermiteSpline

from .errors import DomainError
from .geometry import sphere_area

__all__ = [
    "QuadratureRule",
    "RadialFunction",
    "RadialTensor",
    "gauss_legendre",
]

Array = np.ndarray


@lru_cache(maxsize=32)
def gauss_legendre(k: int) -> tuple[Array, Array]:
    """Nodes and weights of the k-point rule on [-1, 1]."""
    x, w = legendre.leggauss(k)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class QuadratureRule:
    """``m`` nodes split into panels of ``per_panel`` Gauss-Legendre points."""

    delta: float
    n: int
    m: int = 512
    per_panel: int = 8

    def __post_init__(self):
        if self.m % self.per_panel:
            raise DomainError(f"m={self.m} is not a multiple of per_panel={self.per_panel}")
        x, w = gauss_legendre(self.per_panel)
        panels = self.m // self.per_panel
        edges = np.linspace(0.0, self.delta, panels + 1)
        half = 0.5 * np.diff(edges)
        mids = 0.5 * (edges[:-1] + edges[1:])
        nodes = (mids[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (half[:, None] * w[None, :]).ravel()
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(
            self, "volume_weights", weights * np.sin(nodes) ** (self.n - 1) * sphere_area(self.n - 1)
        )

    def integrate(self, values: Array) -> float:
        """Plain integral over [0, delta] of samples at ``nodes``."""
        return float(np.dot(self.weights, values))

    def volume(self, values: Array) -> float:
        """Integral over B(delta) of a radial function sampled at ``nodes``."""
        return float(np.dot(self.volume_weights, values))

    def doubled(self) -> "QuadratureRule":
        return QuadratureRule(self.delta, self.n, 2 * self.m, self.per_panel)


@dataclass(frozen=True)
class RadialFunction:
    """A smooth function of r with its first two derivatives (vectorized)."""

    f: Callable[[Array], Array]
    d1: Callable[[Array], Array]
    d2: Callable[[Array], Array]
    label: str = ""

    def __call__(self, r):
        return self.f(r)

    @classmethod
    def constant(cls, value: float) -> "RadialFunction":
        def zero(r):
            return np.zeros_like(np.asarray(r, dtype=float))

        return cls(lambda r: np.full_like(np.asarray(r, dtype=float), value), zero, zero, f"const({value})")

    @classmethod
    def cos_poly(cls, coeffs) -> "RadialFunction":
        """sum_k coeffs[k] cos(r)^k; smooth at the pole as a function on the ball."""
        p = np.polynomial.Polynomial(coeffs)
        dp, ddp = p.deriv(1), p.deriv(2)

        def f(r):
            return p(np.cos(r))

        def d1(r):
            return -np.sin(r) * dp(np.cos(r))

        def d2(r):
            c, s = np.cos(r), np.sin(r)
            return s * s * ddp(c) - c * dp(c)

        return cls(f, d1, d2, f"cos_poly({list(np.round(coeffs, 6))})")

    @classmethod
    def poly(cls, coeffs) -> "RadialFunction":
        """sum_k coeffs[k] r^k."""
        p = np.polynomial.Polynomial(coeffs)
        return cls(p, p.deriv(1), p.deriv(2), f"poly({list(coeffs)})")

    @classmethod
    def cos(cls) -> "RadialFunction":
        return cls(np.cos, lambda r: -np.sin(r), lambda r: -np.cos(r), "cos")

    @classmethod
    def from_samples(cls, r: Array, u: Array, du: Array, d2_rule: Callable[[Array, Array, Array], Array]):
        """Cubic Hermite interpolant through (r, u, u').

        The second derivative comes from ``d2_rule(r, u, u')`` (typically
        the ODE the samples solve) rather than from the spline.
        """
        spline = CubicHermiteSpline(r, u, du)
        dspline = spline.derivative()

        def d2(x):
            return d2_rule(x, spline(x), dspline(x))

        return cls(spline, dspline, d2, "samples")

    def check_consistency(self, delta: float, points: int = 100, step: float = 1e-5) -> float:
        """Max mismatch between the derivative evaluators and central differences."""
        r = np.linspace(delta / points, delta - step, points)
        e1 = (self.f(r + step) - self.f(r - step)) / (2 * step) - self.d1(r)
        e2 = (self.d1(r + step) - self.d1(r - step)) / (2 * step) - self.d2(r)
        return float(max(np.max(np.abs(e1)), np.max(np.abs(e2))))


@dataclass(frozen=True)
class RadialTensor:
    """h = a(r) dr^2 + b(r) sin^2(r) g_round on the ball, in dimension n.

    With this ansatz h(v, nu) = 0 for v tangent to the boundary, so the
    boundary field X vanishes identically.
    """

    a: RadialFunction
    b: RadialFunction
    n: int

    def trace(self, r):
        return self.a(r) + (self.n - 1) * self.b(r)

    def trace_d1(self, r):
        return self.a.d1(r) + (self.n - 1) * self.b.d1(r)

    def trace_d2(self, r):
        return self.a.d2(r) + (self.n - 1) * self.b.d2(r)

    def norm2(self, r):
        """|h|^2 = a^2 + (n-1) b^2."""
        return self.a(r) ** 2 + (self.n - 1) * self.b(r) ** 2

    def laplacian_trace(self, r):
        return self.trace_d2(r) + (self.n - 1) / np.tan(r) * self.trace_d1(r)

    def pole_mismatch(self) -> float:
        """|a(0) - b(0)|; zero for a tensor that is smooth at the center."""
        z = np.array([0.0])
        return float(abs(self.a(z)[0] - self.b(z)[0]))
