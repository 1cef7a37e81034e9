"""First nonzero Neumann eigenvalue mu(delta) of the geodesic ball B(delta).

Two independent routes are provided: RK4 shooting on the radial
equation of the first angular mode (the production path, backed by the
compiled kernels), and a second-order finite-volume discretization of the
same Sturm-Liouville problem solved by shifted inverse iteration (the
oracle).  Closed-form lower bounds complete the module.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import solve_banded

from . import kernels
from .errors import DomainError, NoSignChange, NonConvergence
from .geometry import HALF_PI, check_dimension, sin_power_integral

__all__ = [
    "EigenResult",
    "mu_lower_tilde",
    "mu_lower_simple",
    "mu_shooting",
    "mu_oracle_fd",
    "mu_radial_mode",
    "shooting_eigenfunction",
    "RK4_STEPS",
    "R0",
]

RK4_STEPS = 20000
R0 = 1e-4
MAX_BISECTIONS = 200


@dataclass(frozen=True)
class EigenResult:
    n: int
    delta: float
    mu: float
    method: str  # "shooting" | "finite_difference_oracle"
    bracket: tuple[float, float]
    residual: float
    mode: int = 1

    def __post_init__(self):
        # numpy scalars leak in from the kernels; keep records JSON-clean
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "residual", float(self.residual))
        object.__setattr__(self, "bracket", (float(self.bracket[0]), float(self.bracket[1])))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bracket"] = list(self.bracket)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EigenResult":
        d = dict(d)
        d["bracket"] = tuple(d["bracket"])
        return cls(**d)


def _check_delta(delta):
    if not (0.0 < delta <= HALF_PI):
        raise DomainError(f"delta must lie in (0, pi/2], got {delta!r}")


def mu_lower_simple(n: int, delta: float) -> float:
    """The bound n / sin^2(delta)."""
    _check_delta(delta)
    return n / math.sin(delta) ** 2


def mu_lower_tilde(n: int, delta: float) -> float:
    """The sharper bound n + sin^(n-2)(delta) cos(delta) / int_0^delta sin^(n-1)."""
    check_dimension(n)
    _check_delta(delta)
    s = math.sin(delta)
    return n + s ** (n - 2) * math.cos(delta) / sin_power_integral(n, delta)


@lru_cache(maxsize=64)
def _coefficients(n: int, delta: float, mode: int, steps: int):
    # p = (n-1) cot r and q = mode * (mode + n - 2) / sin^2 r on half-step nodes
    h = (delta - R0) / steps
    r = R0 + 0.5 * h * np.arange(2 * steps + 1)
    sr = np.sin(r)
    p = (n - 1) * np.cos(r) / sr
    q = mode * (mode + n - 2) / sr**2
    p.setflags(write=False)
    q.setflags(write=False)
    return h, p, q


def _series_start(n: int, mu: float, mode: int):
    """Value and slope at R0 of the regular solution, normalized u ~ r^mode."""
    ell = mode
    # u = r^l (1 + c r^2) matched against cot r = 1/r - r/3 and
    # 1/sin^2 r = 1/r^2 + 1/3; exact for the two modes used here
    k = ell * (ell + n - 2)
    c2 = (k / 3.0 + (n - 1) * ell / 3.0 - mu) / (2.0 * (2 * ell + n))
    u = R0**ell * (1.0 + c2 * R0 * R0)
    v = ell * R0 ** (ell - 1) + (ell + 2) * c2 * R0 ** (ell + 1) if ell else 2 * c2 * R0
    return u, v


def _slope_at_delta(n, delta, mu, mode, steps):
    h, p, q = _coefficients(n, delta, mode, steps)
    u0, v0 = _series_start(n, mu, mode)
    return kernels.shoot(mu, p, q, h, u0, v0)[1]


def _first_sign_change(f, lo, hi, pieces=8):
    """Leftmost subinterval of [lo, hi] on which ``f`` changes sign."""
    xs = np.linspace(lo, hi, pieces + 1)
    prev_x, prev_f = xs[0], f(xs[0])
    if prev_f == 0.0:
        return prev_x, prev_x, prev_f, prev_f
    for x in xs[1:]:
        fx = f(x)
        if fx == 0.0 or (fx > 0) != (prev_f > 0):
            return prev_x, x, prev_f, fx
        prev_x, prev_f = x, fx
    return None


def _bisect_mu(f, lo, hi, flo, tol):
    for _ in range(MAX_BISECTIONS):
        if hi - lo <= tol * lo:
            return lo, hi
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    raise NonConvergence(f"bisection did not reach width {tol}*mu in {MAX_BISECTIONS} steps")


def _shoot_mode(n, delta, tol, steps, mode):
    def f(mu):
        return _slope_at_delta(n, delta, mu, mode, steps)

    simple = n / math.sin(delta) ** 2
    if mode == 1:
        # mu = n/sin^2 exactly at the hemisphere, so step just below it
        lo, hi = (1.0 - 1e-6) * simple, 4.0 * simple
    else:
        # mu = 0 is the constant mode; start just above it
        lo, hi = 1e-6 * simple, 16.0 * simple
    found = _first_sign_change(f, lo, hi)
    widenings = 0
    while found is None:
        widenings += 1
        if widenings > 8:
            raise NoSignChange(f"no sign change of u'(delta) for n={n}, delta={delta}")
        lo, hi = 0.5 * lo, 2.0 * hi
        found = _first_sign_change(f, lo, hi)
    if widenings:
        import logging

        logging.getLogger(__name__).warning(
            "initial bracket for n=%d delta=%r widened %d times", n, delta, widenings
        )
    a, b, fa, _ = found
    if a == b:
        return EigenResult(n, delta, a, "shooting", (a, a), abs(fa), mode)
    lo, hi = _bisect_mu(f, a, b, fa, tol)
    mu = 0.5 * (lo + hi)
    return EigenResult(n, delta, mu, "shooting", (lo, hi), abs(f(mu)), mode)


@lru_cache(maxsize=4096)
def mu_shooting(
    n: int,
    delta: float,
    tol: float = 1e-12,
    *,
    steps: int = RK4_STEPS,
    check_radial: bool = False,
) -> EigenResult:
    """First nonzero Neumann eigenvalue of B(delta) by shooting.

    Integrates the first angular mode u'' + (n-1) cot r u' +
    (mu - (n-1)/sin^2 r) u = 0 from a series start at r = 1e-4 with fixed
    step RK4 and bisects on the sign of u'(delta).  With
    ``check_radial=True`` the radial (zeroth) mode is solved too; if it
    came out lower it is returned instead, with a warning.
    """
    check_dimension(n)
    _check_delta(delta)
    if not (1e-12 <= tol <= 1e-4):
        raise DomainError(f"tol must lie in [1e-12, 1e-4], got {tol!r}")
    res = _shoot_mode(n, delta, tol, steps, 1)
    if check_radial:
        radial = _shoot_mode(n, delta, tol, steps, 0)
        if radial.mu < res.mu:
            import warnings

            warnings.warn(
                f"radial mode eigenvalue {radial.mu} below first angular mode {res.mu}"
                f" (n={n}, delta={delta})",
                RuntimeWarning,
                stacklevel=2,
            )
            return radial
    return res


def mu_radial_mode(n: int, delta: float, tol: float = 1e-12) -> EigenResult:
    """First nonzero Neumann eigenvalue among radial (zeroth-mode) functions."""
    check_dimension(n)
    _check_delta(delta)
    return _shoot_mode(n, delta, tol, RK4_STEPS, 0)


def shooting_eigenfunction(n: int, delta: float, mu: float, steps: int = RK4_STEPS):
    """Grid ``r`` with u and u' of the first-mode solution at eigenvalue ``mu``."""
    h, p, q = _coefficients(n, delta, 1, steps)
    u0, v0 = _series_start(n, mu, 1)
    u, v = kernels.shoot_profile(mu, p, q, h, u0, v0)
    r = R0 + h * np.arange(steps + 1)
    return r, np.asarray(u), np.asarray(v)


def _fd_pencil(n: int, delta: float, m: int):
    """Finite-volume pencil (A, B) for -(w u')' + (n-1) sin^(n-3) u = mu w u.

    Nodes r_i = i delta / m, i = 1..m, with u_0 = 0 and a half control
    volume at the Neumann end r_m = delta.  ``A`` is returned as
    (diag, offdiag); ``B`` is diagonal.
    """
    h = delta / m
    r = h * np.arange(1, m + 1)
    half = h * (np.arange(0, m) + 0.5)  # r_{i-1/2}, i = 1..m
    p_half = np.sin(half) ** (n - 1)
    sr = np.sin(r)
    q = (n - 1) * sr ** (n - 3)
    w = sr ** (n - 1)
    vol = np.full(m, h)
    vol[-1] = 0.5 * h
    diag = q * vol
    diag[:-1] += (p_half[:-1] + p_half[1:]) / h
    diag[-1] += p_half[-1] / h
    off = -p_half[1:] / h
    return diag, off, w * vol


def mu_oracle_fd(n: int, delta: float, m: int = 2000, *, max_iter: int = 500) -> EigenResult:
    """Smallest first-mode eigenvalue of the finite-volume discretization.

    Independent of the shooting route: second order in 1/m, solved by
    shifted inverse iteration on the symmetrized tridiagonal pencil.  The
    bracket is the residual bound of the symmetric eigenproblem.
    """
    check_dimension(n)
    _check_delta(delta)
    if m < 100:
        raise DomainError(f"m must be >= 100, got {m}")
    diag, off, bdiag = _fd_pencil(n, delta, m)
    scale = 1.0 / np.sqrt(bdiag)
    d = diag * scale * scale
    e = off * scale[:-1] * scale[1:]
    shift = 0.9 * n / math.sin(delta) ** 2
    ab = np.zeros((3, m))
    ab[0, 1:] = e
    ab[1] = d - shift
    ab[2, :-1] = e

    def matvec(x):
        y = d * x
        y[:-1] += e * x[1:]
        y[1:] += e * x[:-1]
        return y

    x = np.ones(m) / math.sqrt(m)
    mu = prev = math.inf
    for _ in range(max_iter):
        y = solve_banded((1, 1), ab, x)
        # quotient of the inverse: immune to the large top of the spectrum
        mu = shift + 1.0 / float(x @ y)
        x = y / np.linalg.norm(y)
        if abs(mu - prev) <= 1e-14 * abs(mu):
            break
        prev = mu
    else:
        raise NonConvergence(f"inverse iteration did not converge in {max_iter} steps")
    res = float(np.linalg.norm(matvec(x) - mu * x))
    return EigenResult(n, delta, mu, "finite_difference_oracle", (mu - res, mu + res), res)
