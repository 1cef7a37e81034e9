"""Threshold constants for the two enlarged rigidity radii.

Condition (a) is ``cos(delta) > zeta(n)``; condition (b) is
``delta < delta0(n)`` with ``delta0`` the zero of ``F``.  The module also
computes the explicit bounds kappa, kappa_tilde and the 7n bound, and the
root of ``F`` when the eigenvalue is replaced by either of its lower bounds.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .eigen import mu_lower_simple, mu_lower_tilde, mu_shooting
from .errors import DomainError, NonConvergence, RootNotBracketed
from .geometry import HALF_PI, check_dimension

__all__ = [
    "ThresholdRecord",
    "ComparisonRow",
    "Comparison",
    "zeta",
    "zeta_method1",
    "zeta_branches",
    "kappa",
    "kappa_quadratic",
    "kappa_tilde",
    "kappa_tilde_quartic",
    "bound_7n",
    "bm_bound",
    "F_of",
    "root_of_F",
    "delta0",
    "delta0_tilde",
    "delta0_simple",
    "threshold_record",
    "compare_conditions",
    "PROVIDERS",
]

DELTA_LO = 0.05
DELTA_HI = HALF_PI - 1e-6


def bm_bound(n: int) -> float:
    """The original radius bound 2/sqrt(n+3) on cos(delta)."""
    return 2.0 / math.sqrt(n + 3)


def zeta_branches(n: int) -> tuple[float, float]:
    """Squares of the two candidate thresholds: the closed-form one and 2/(n+1)."""
    closed = (4.0 * (n + 4) - 4.0 * math.sqrt(2 * n - 1)) / (n * n + 6 * n + 17)
    return closed, 2.0 / (n + 1)


def zeta(n: int) -> tuple[float, str]:
    """Threshold of condition (a) and the rule that establishes it.

    The value is always the square root of
    (4(n+4) - 4 sqrt(2n-1)) / (n^2 + 6n + 17).  ``"large_n"`` (n >= 5)
    means the first-method conditions already suffice; ``"small_n"``
    (n = 3, 4) means the combined estimate is needed, since there the
    second first-method condition c^2 >= 2/(n+1) is the binding one.
    """
    check_dimension(n, minimum=3)
    closed, _ = zeta_branches(n)
    return math.sqrt(closed), ("small_n" if n <= 4 else "large_n")


def zeta_method1(n: int) -> float:
    """Threshold from the first method alone: the larger of the two branches."""
    check_dimension(n, minimum=3)
    closed, other = zeta_branches(n)
    return math.sqrt(other if n <= 4 else closed)


def kappa_quadratic(n: int, x: float) -> float:
    return 2.0 * n * (n + 3) * x * x + (n + 1) * x + (1.0 - 7.0 * n)


def kappa(n: int) -> float:
    """Positive root of 2n(n+3) x^2 + (n+1) x + (1 - 7n)."""
    check_dimension(n, minimum=3)
    a, b, c = 2.0 * n * (n + 3), float(n + 1), 1.0 - 7.0 * n
    # c < 0 < b, so -b - sqrt(disc) has no cancellation
    return 2.0 * c / (-b - math.sqrt(b * b - 4.0 * a * c))


def kappa_tilde_quartic(n: int, x: float) -> float:
    return (
        n * (n + 3) * x**4
        + n * (n + 3) * x**3
        + 2.0 * n * (n + 1) * x**2
        + (1.0 - 3.0 * n) * x
        - 7.0 * n
        + 1.0
    )


def kappa_tilde(n: int, tol: float = 1e-12) -> float:
    """Zero in (0, 1) of the quartic bounding cos(delta0) from above."""
    check_dimension(n, minimum=3)

    def f(x):
        return kappa_tilde_quartic(n, x)

    lo, hi = 0.0, 1.0
    flo, fhi = f(lo), f(hi)
    if not (flo < 0.0 < fhi):
        raise RootNotBracketed(f"quartic has no sign change on (0, 1) for n={n}")
    vals = np.array([f(x) for x in np.linspace(0.0, 1.0, 1001)])
    if np.count_nonzero(np.diff(np.sign(vals))) != 1:
        raise RootNotBracketed(f"quartic root in (0, 1) is not unique for n={n}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bound_7n(n: int) -> float:
    """Upper bound sqrt((7n - 1) / (2n^2 + 5n - 1)) on cos(delta0)."""
    check_dimension(n, minimum=3)
    return math.sqrt((7.0 * n - 1.0) / (2.0 * n * n + 5.0 * n - 1.0))


def _mu_true(n, delta):
    return mu_shooting(n, delta).mu


PROVIDERS: dict[str, Callable[[int, float], float]] = {
    "shooting": _mu_true,
    "tilde": mu_lower_tilde,
    "simple": mu_lower_simple,
}


def F_of(n: int, delta: float, mu_provider: Callable[[int, float], float] | str = "shooting") -> float:
    """F(delta) = alpha(delta) + ((n+3) cos^2 - 4) / (4 sin^2).

    ``alpha = (n+1)/(8n) / (1 - (1 - n/(2 mu)) cos(delta))`` with ``mu``
    taken from ``mu_provider(n, delta)``.
    """
    if isinstance(mu_provider, str):
        mu_provider = PROVIDERS[mu_provider]
    if not (0.0 < delta < HALF_PI):
        raise DomainError(f"delta must lie in (0, pi/2), got {delta!r}")
    mu = mu_provider(n, delta)
    c, s = math.cos(delta), math.sin(delta)
    denom = 1.0 - (1.0 - n / (2.0 * mu)) * c
    if denom <= 0.0:
        raise DomainError(f"alpha denominator {denom} <= 0 (mu={mu} <= n/2?)")
    alpha = (n + 1) / (8.0 * n) / denom
    return alpha + ((n + 3) * c * c - 4.0) / (4.0 * s * s)


def root_of_F(n, mu_provider="shooting", *, xtol=1e-10, ftol=1e-10, max_iter=200):
    """Bisect the decreasing function F on (0.05, pi/2 - 1e-6)."""
    check_dimension(n, minimum=3)
    lo, hi = DELTA_LO, DELTA_HI
    flo, fhi = F_of(n, lo, mu_provider), F_of(n, hi, mu_provider)
    if not (flo > 0.0 > fhi):
        raise RootNotBracketed(f"F has no sign change on ({lo}, {hi}) for n={n}")
    best = (abs(flo), lo)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = F_of(n, mid, mu_provider)
        best = min(best, (abs(fm), mid))
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= xtol and best[0] <= ftol:
            return best[1]
        if hi - lo <= 4e-16:
            break
    raise NonConvergence(f"F root for n={n} did not reach |F| <= {ftol}")


def delta0(n: int) -> tuple[float, float]:
    """Zero of F with the true eigenvalue; returns (delta0, cos delta0)."""
    d = root_of_F(n, "shooting")
    return d, math.cos(d)


def delta0_tilde(n: int) -> tuple[float, float]:
    """Zero of F with the eigenvalue replaced by the sharper lower bound."""
    d = root_of_F(n, "tilde")
    return d, math.cos(d)


def delta0_simple(n: int) -> tuple[float, float]:
    """Zero of F with the eigenvalue replaced by n / sin^2; cos of it is kappa_tilde."""
    d = root_of_F(n, "simple")
    return d, math.cos(d)


@dataclass(frozen=True)
class ThresholdRecord:
    n: int
    bm: float
    zeta: float
    zeta_rule: str
    kappa: float
    kappa_tilde: float
    bound_7n: float
    cos_delta0: float
    cos_delta0_tilde: float

    def violations(self) -> list[str]:
        """Names of the ordering invariants that fail (empty when all hold)."""
        checks = {
            "kappa < cos_delta0": self.kappa < self.cos_delta0,
            "cos_delta0 < kappa_tilde": self.cos_delta0 < self.kappa_tilde,
            "cos_delta0 < bound_7n": self.cos_delta0 < self.bound_7n,
            "cos_delta0 < cos_delta0_tilde": self.cos_delta0 < self.cos_delta0_tilde,
            "zeta < bm": self.zeta < self.bm,
            "kappa < bm": self.kappa < self.bm,
            "cos_delta0^2 > 1/(n+1)": self.cos_delta0**2 > 1.0 / (self.n + 1),
        }
        return [name for name, ok in checks.items() if not ok]

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ThresholdRecord":
        return cls(**d)


def threshold_record(n: int) -> ThresholdRecord:
    z, rule = zeta(n)
    return ThresholdRecord(
        n=n,
        bm=bm_bound(n),
        zeta=z,
        zeta_rule=rule,
        kappa=kappa(n),
        kappa_tilde=kappa_tilde(n),
        bound_7n=bound_7n(n),
        cos_delta0=delta0(n)[1],
        cos_delta0_tilde=delta0_tilde(n)[1],
    )


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    winner: str  # "condition_a" | "condition_b"
    margin: float  # zeta - cos_delta0
    margin_kappa: float  # zeta - kappa

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ComparisonRow":
        return cls(**d)


@dataclass(frozen=True)
class Comparison:
    rows: list[ComparisonRow]
    crossover: int | None  # smallest n from which condition (b) wins throughout


def compare_conditions(n_max: int, n_min: int = 3) -> Comparison:
    """Compare the two conditions for each n in [n_min, n_max].

    The smaller threshold on cos(delta) admits the larger ball and wins.
    """
    check_dimension(n_max, minimum=5)
    rows = []
    for n in range(n_min, n_max + 1):
        z, _ = zeta(n)
        cd0 = delta0(n)[1]
        rows.append(ComparisonRow(n, "condition_a" if z < cd0 else "condition_b", z - cd0, z - kappa(n)))
    crossover = None
    for row in reversed(rows):
        if row.winner != "condition_b":
            break
        crossover = row.n
    return Comparison(rows, crossover)
