"""Numerical checks of the integral identities and estimates on radial data.

Every check evaluates both sides independently: boundary terms in closed
form, interior terms by :class:`~rigidball.quadrature.QuadratureRule`, and
linearizations by central differences of closed-form warped-product
curvature.  Results carry the raw sides so callers can inspect margins.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .eigen import R0, mu_shooting, shooting_eigenfunction
from .errors import DomainError, NonConvergence, PreconditionError
from .geometry import sphere_area
from .quadrature import QuadratureRule, RadialFunction, RadialTensor, gauss_legendre

__all__ = [
    "IdentityCheck",
    "InequalityCheck",
    "divergence_radial",
    "make_divfree",
    "divfree_rk4",
    "verify_divergence_identity",
    "verify_trace_estimate",
    "verify_ibp_identity",
    "verify_variational",
    "eigenfunction_profile",
    "warped_scalar_curvature",
    "warped_mean_curvature",
    "verify_linearized_R",
    "verify_linearized_H",
    "random_profile",
    "run_identity_suite",
    "SuiteResult",
]

DEFAULT_M = 512
MAX_M = 2**16
DIVFREE_TOL = 1e-9
FD_STEP = 1e-5


class IdentityCheck(NamedTuple):
    lhs: float
    rhs: float
    residual: float


class InequalityCheck(NamedTuple):
    lhs: float
    rhs: float
    slack: float


def _rel(lhs, rhs):
    return abs(lhs - rhs) / (1.0 + abs(lhs))


def _converged(evaluate, delta, n, m=DEFAULT_M, rtol=1e-13):
    """Run ``evaluate(rule)`` with node doubling until two runs agree."""
    rule = QuadratureRule(delta, n, m)
    prev = evaluate(rule)
    while rule.m < MAX_M:
        rule = rule.doubled()
        cur = evaluate(rule)
        if all(abs(a - b) <= rtol * max(1.0, abs(a)) for a, b in zip(prev, cur)):
            return prev
        prev = cur
    raise NonConvergence(f"quadrature unsettled at m = {MAX_M}")


# --- divergence --------------------------------------------------------------


def divergence_radial(h: RadialTensor, n: int, r):
    """(div h)_r = a' + (n-1) cot(r) (a - b); the other components vanish."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("divergence_radial is evaluated away from the pole (r > 0)")
    return h.a.d1(r) + (n - 1) / np.tan(r) * (h.a(r) - h.b(r))


_DIVFREE_NODES = 48


def make_divfree(b: RadialFunction, n: int, delta: float) -> RadialTensor:
    """Divergence-free radial tensor with tangential profile ``b``.

    Solves a' = -(n-1) cot(r) (a - b), a(0) = b(0), through its integrating
    factor: a(r) = (n-1) sin(r)^(1-n) int_0^r sin^(n-2) cos b dt, with a
    48-point Gauss-Legendre rule on [0, r].  a' and a'' follow from the ODE.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    x, w = gauss_legendre(_DIVFREE_NODES)

    def a(r):
        r = np.asarray(r, dtype=float)
        flat = np.atleast_1d(r).ravel()
        out = np.empty_like(flat)
        at_pole = flat == 0.0
        rr = flat[~at_pole]
        t = 0.5 * rr[:, None] * (1.0 + x[None, :])
        integrand = np.sin(t) ** (n - 2) * np.cos(t) * b(t)
        integral = 0.5 * rr * (integrand @ w)
        out[~at_pole] = (n - 1) * integral / np.sin(rr) ** (n - 1)
        out[at_pole] = b(np.zeros(1))[0]
        return out.reshape(r.shape) if r.ndim else out[0]

    def a1(r):
        r = np.asarray(r, dtype=float)
        return -(n - 1) / np.tan(r) * (a(r) - b(r))

    def a2(r):
        r = np.asarray(r, dtype=float)
        cot = 1.0 / np.tan(r)
        return -(n - 1) * (-(1.0 + cot * cot) * (a(r) - b(r)) + cot * (a1(r) - b.d1(r)))

    label = f"divfree({b.label})"
    return RadialTensor(RadialFunction(a, a1, a2, label), b, n)


def divfree_rk4(b: RadialFunction, n: int, delta: float, steps: int = 20000):
    """Same ODE by the fixed-step RK4 kernel; returns (r, a) on the grid.

    Starts at r = 1e-4 from the series a = b(0) + (n-1)/(n+1) b''(0) r^2 / 2.
    """
    h = (delta - R0) / steps
    r_half = R0 + 0.5 * h * np.arange(2 * steps + 1)
    p = (n - 1) / np.tan(r_half)
    z = np.zeros(1)
    a0 = b(z)[0] + (n - 1) / (n + 1) * 0.5 * b.d2(z)[0] * R0 * R0
    a = kernels.relax(p, b(r_half), h, a0)
    return r_half[::2], np.asarray(a)


# --- boundary/interior identities -------------------------------------------


def verify_divergence_identity(
    h: RadialTensor, n: int, delta: float, *, include_div_term: bool = True, m: int = DEFAULT_M
) -> IdentityCheck:
    """s int_S tr(h) h(nu,nu) = int [lam tr^2 - h(grad lam, grad tr) - tr div h(grad lam)].

    The last term vanishes for divergence-free h; ``include_div_term=False``
    drops it, which breaks the identity for general h.
    """
    s = math.sin(delta)
    d = np.array([delta])
    lhs = float(s * h.a(d)[0] * h.trace(d)[0] * sphere_area(n - 1) * s ** (n - 1))

    def rhs(rule):
        r = rule.nodes
        sr = np.sin(r)
        tr = h.trace(r)
        # grad lam = -sin r d/dr
        integrand = np.cos(r) * tr**2 + sr * h.a(r) * h.trace_d1(r)
        if include_div_term:
            integrand = integrand + tr * sr * divergence_radial(h, n, r)
        return (rule.volume(integrand),)

    (val,) = _converged(rhs, delta, n, m)
    return IdentityCheck(lhs, val, _rel(lhs, val))


def _divfree_residual(h, n, delta):
    r = np.linspace(delta / 100.0, delta, 200)
    return float(np.max(np.abs(divergence_radial(h, n, r))))


def verify_trace_estimate(h: RadialTensor, n: int, delta: float, w: float, m: int = DEFAULT_M) -> InequalityCheck:
    """Weighted trace estimate with constant weight ``w``; slack = rhs - lhs."""
    if w <= 0.0:
        raise DomainError(f"weight must be positive, got {w}")
    res = _divfree_residual(h, n, delta)
    if res > DIVFREE_TOL:
        raise PreconditionError(f"h is not divergence free (max |div h| = {res:.3e})")
    s = math.sin(delta)
    d = np.array([delta])
    lhs = float(s * h.trace(d)[0] * h.a(d)[0] * sphere_area(n - 1) * s ** (n - 1))

    def rhs(rule):
        r = rule.nodes
        sr = np.sin(r)
        integrand = 0.5 * w * sr * h.norm2(r) + np.cos(r) * h.trace(r) ** 2 + sr * h.trace_d1(r) ** 2 / (2.0 * w)
        return (rule.volume(integrand),)

    (val,) = _converged(rhs, delta, n, m)
    return InequalityCheck(lhs, val, val - lhs)


def _laplacian_radial(f, f1, f2, n, r):
    return f2 + (n - 1) / np.tan(r) * f1


def verify_ibp_identity(u: RadialFunction, n: int, delta: float, m: int = DEFAULT_M) -> IdentityCheck:
    """int_S u^2 d_nu(lam) = int [u^2 lap(lam) - (lam - c) lap(u^2)] for any u."""
    s, c = math.sin(delta), math.cos(delta)
    d = np.array([delta])
    lhs = float(-s * u(d)[0] ** 2 * sphere_area(n - 1) * s ** (n - 1))

    def rhs(rule):
        r = rule.nodes
        uu, u1, u2 = u(r), u.d1(r), u.d2(r)
        lam = np.cos(r)
        lap_u2 = _laplacian_radial(uu * uu, 2.0 * uu * u1, 2.0 * (u1 * u1 + uu * u2), n, r)
        return (rule.volume(-n * lam * uu * uu - (lam - c) * lap_u2),)

    (val,) = _converged(rhs, delta, n, m)
    return IdentityCheck(lhs, val, _rel(lhs, val))


def verify_variational(
    u: RadialFunction, n: int, delta: float, *, angular: bool = False, mu: float | None = None, m: int = DEFAULT_M
) -> InequalityCheck:
    """Poincare inequality int |grad v|^2 >= mu [int v^2 - (int v)^2 / V].

    With ``angular=False`` the trial function is v = u(r).  With
    ``angular=True`` it is v = u(r) Y(theta) for a first spherical harmonic
    Y, so int v = 0 and the angular gradient contributes
    (n-1) u^2 / sin^2 r; the common factor int Y^2 is dropped.
    """
    if mu is None:
        mu = mu_shooting(n, delta).mu

    def sides(rule):
        r = rule.nodes
        uu, u1 = u(r), u.d1(r)
        if angular:
            dirichlet = rule.volume(u1 * u1 + (n - 1) * uu * uu / np.sin(r) ** 2)
            return dirichlet, mu * rule.volume(uu * uu)
        vol = rule.volume(np.ones_like(r))
        mean_part = rule.volume(uu) ** 2 / vol
        return rule.volume(u1 * u1), mu * (rule.volume(uu * uu) - mean_part)

    lhs, rhs = _converged(sides, delta, n, m, rtol=1e-12)
    return InequalityCheck(lhs, rhs, lhs - rhs)


def eigenfunction_profile(n: int, delta: float) -> tuple[RadialFunction, float]:
    """Shooting eigenfunction of the first angular mode, as a RadialFunction."""
    mu = mu_shooting(n, delta).mu
    r, u, du = shooting_eigenfunction(n, delta, mu)

    def ode_d2(x, ux, dux):
        x = np.asarray(x, dtype=float)
        return -(n - 1) / np.tan(x) * dux - (mu - (n - 1) / np.sin(x) ** 2) * ux

    # prepend the pole so nodes below R0 interpolate the regular branch u ~ r
    r = np.concatenate(([0.0], r))
    u = np.concatenate(([0.0], u))
    du = np.concatenate(([1.0], du))
    return RadialFunction.from_samples(r, u, du, ode_d2), mu


# --- curvature of the deformed metrics --------------------------------------


def _warp(a: RadialFunction, b: RadialFunction, t: float, r):
    r = np.asarray(r, dtype=float)
    A = 1.0 + t * a(r)
    B = 1.0 + t * b(r)
    if np.any(A <= 0.0) or np.any(B <= 0.0):
        raise DomainError("degenerate metric: 1 + t a and 1 + t b must stay positive")
    return r, A, B


def warped_scalar_curvature(a: RadialFunction, b: RadialFunction, t: float, r, n: int):
    """Scalar curvature of (1 + t a) dr^2 + sin^2(r) (1 + t b) g_round.

    Writing the metric as A dr^2 + F^2 g_round with F = sin(r) sqrt(B):
    R = -2(n-1) (F''/A - F' A'/(2A^2)) / F + (n-1)(n-2) (1 - F'^2/A) / F^2.
    """
    r, A, B = _warp(a, b, t, r)
    A1 = t * a.d1(r)
    B1, B2 = t * b.d1(r), t * b.d2(r)
    s, c = np.sin(r), np.cos(r)
    sqB = np.sqrt(B)
    F = s * sqB
    F1 = c * sqB + s * B1 / (2.0 * sqB)
    F2 = -s * sqB + c * B1 / sqB + s * (B2 / (2.0 * sqB) - B1 * B1 / (4.0 * B * sqB))
    return -2.0 * (n - 1) * (F2 / A - F1 * A1 / (2.0 * A * A)) / F + (n - 1) * (n - 2) * (1.0 - F1 * F1 / A) / (F * F)


def warped_mean_curvature(a: RadialFunction, b: RadialFunction, t: float, r, n: int):
    """Mean curvature of the sphere {r} for the deformed metric, outward normal."""
    r, A, B = _warp(a, b, t, r)
    return (n - 1) / np.sqrt(A) * (1.0 / np.tan(r) + t * b.d1(r) / (2.0 * B))


def verify_linearized_R(h: RadialTensor, n: int, delta: float, t: float = FD_STEP, points: int = 200) -> float:
    """Max relative mismatch of the central difference of R against -lap tr - (n-1) tr."""
    res = _divfree_residual(h, n, delta)
    if res > DIVFREE_TOL:
        raise PreconditionError(f"h is not divergence free (max |div h| = {res:.3e})")
    r = np.linspace(delta / 50.0, delta, points)
    fd = (warped_scalar_curvature(h.a, h.b, t, r, n) - warped_scalar_curvature(h.a, h.b, -t, r, n)) / (2.0 * t)
    expected = -h.laplacian_trace(r) - (n - 1) * h.trace(r)
    return float(np.max(np.abs(fd - expected) / (1.0 + np.abs(expected))))


def verify_linearized_H(h: RadialTensor, n: int, delta: float, t: float = FD_STEP) -> float:
    """Relative mismatch of the central difference of H against the linearization.

    The linearization is (1/2)[d_nu tr h - div h(nu)] with X = 0, which for
    b(delta) = 0 equals (n-1)(b'(delta) - a(delta) cot(delta)) / 2.
    """
    d = np.array([delta])
    if abs(h.b(d)[0]) > 1e-12:
        raise PreconditionError(f"b(delta) = {h.b(d)[0]:.3e}; boundary metrics must agree")
    fd = (warped_mean_curvature(h.a, h.b, t, d, n) - warped_mean_curvature(h.a, h.b, -t, d, n))[0] / (2.0 * t)
    linear = 0.5 * (h.trace_d1(d)[0] - divergence_radial(h, n, d)[0])
    return float(abs(fd - linear) / (1.0 + abs(linear)))


# --- randomized suite ---------------------------------------------------------


def random_profile(rng: np.random.Generator, degree: int = 4, scale: float = 1.0) -> RadialFunction:
    """Random polynomial in cos(r) with standard normal coefficients."""
    return RadialFunction.cos_poly(scale * rng.standard_normal(degree + 1))


def _vanishing_at(delta: float, rng: np.random.Generator) -> RadialFunction:
    """(cos r - cos delta) times a random cos-polynomial: zero at r = delta."""
    q = np.polynomial.Polynomial(rng.standard_normal(4))
    p = q * np.polynomial.Polynomial([-math.cos(delta), 1.0])
    return RadialFunction.cos_poly(p.coef)


@dataclass
class SuiteResult:
    n: int
    delta: float
    profiles: int
    divergence_identity: float  # max residual
    divergence_negative_control: float  # max residual without the div term
    ibp_identity: float
    linearized_R: float
    linearized_H: float
    trace_estimate_min_slack: float
    variational_min_rel_slack: float
    eigenfunction_rel_slack: float

    def failures(self) -> list[str]:
        out = []
        if self.divergence_identity > 1e-10:
            out.append("divergence_identity")
        if self.divergence_negative_control <= 1e-3:
            out.append("divergence_negative_control")
        if self.ibp_identity > 1e-10:
            out.append("ibp_identity")
        if self.linearized_R > 1e-6:
            out.append("linearized_R")
        if self.linearized_H > 1e-8:
            out.append("linearized_H")
        if self.trace_estimate_min_slack < -1e-10:
            out.append("trace_estimate")
        if self.variational_min_rel_slack < -1e-8:
            out.append("variational")
        if abs(self.eigenfunction_rel_slack) > 1e-6:
            out.append("eigenfunction_saturation")
        return out

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteResult":
        return cls(**d)


TRACE_WEIGHTS = (0.5, math.sqrt(2.0), 4.0)


def run_identity_suite(n: int, delta: float, profiles: int = 50, seed: int = 42) -> SuiteResult:
    """Run every check on ``profiles`` random radial profiles at (n, delta)."""
    rng = np.random.default_rng([seed, n, int(round(delta * 1e6))])
    div_res = neg_res = ibp_res = lin_r = lin_h = 0.0
    trace_slack = var_slack = math.inf
    mu = mu_shooting(n, delta).mu
    for _ in range(profiles):
        h = make_divfree(random_profile(rng), n, delta)
        div_res = max(div_res, verify_divergence_identity(h, n, delta).residual)
        lin_r = max(lin_r, verify_linearized_R(h, n, delta))
        for w in TRACE_WEIGHTS:
            trace_slack = min(trace_slack, verify_trace_estimate(h, n, delta, w).slack)

        generic = RadialTensor(random_profile(rng), random_profile(rng), n)
        neg_res = max(neg_res, verify_divergence_identity(generic, n, delta, include_div_term=False).residual)
        div_res = max(div_res, verify_divergence_identity(generic, n, delta).residual)

        ibp_res = max(ibp_res, verify_ibp_identity(random_profile(rng), n, delta).residual)

        hb = RadialTensor(random_profile(rng), _vanishing_at(delta, rng), n)
        lin_h = max(lin_h, verify_linearized_H(hb, n, delta))

        u = random_profile(rng)
        chk = verify_variational(u, n, delta, mu=mu)
        var_slack = min(var_slack, chk.slack / max(chk.lhs, 1e-300))
        # first-mode trial must vanish at the pole
        v = RadialFunction.cos_poly((np.polynomial.Polynomial([1.0, -1.0]) * np.polynomial.Polynomial(rng.standard_normal(3))).coef)
        chk = verify_variational(v, n, delta, angular=True, mu=mu)
        var_slack = min(var_slack, chk.slack / max(chk.lhs, 1e-300))
    ef, mu_ef = eigenfunction_profile(n, delta)
    sat = verify_variational(ef, n, delta, angular=True, mu=mu_ef)
    vals = (div_res, neg_res, ibp_res, lin_r, lin_h, trace_slack, var_slack, sat.slack / sat.lhs)
    return SuiteResult(n, delta, profiles, *map(float, vals))
