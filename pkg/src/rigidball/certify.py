"""Interval branch-and-bound certification of strict positivity.

The generic engine :func:`certify_positive` bisects a range until every
leaf has a strictly positive enclosure (a proof of positivity), some leaf
is strictly negative (a counterexample), or the depth budget runs out.
On top of it sit the two families of one-variable inequalities in
``c = cos(delta)`` that decide the enlarged rigidity radius.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Callable

from .errors import DomainError
from .geometry import check_dimension
from .interval import Interval, IntervalDomainError
from .thresholds import zeta

__all__ = [
    "CertificateReport",
    "certify_positive",
    "combined_inequality",
    "combined_inequality_float",
    "certify_combined",
    "certified_threshold",
    "method1_first",
    "method1_second",
    "method1_first_float",
    "method1_second_float",
    "Method1Certificate",
    "certify_method1_conditions",
    "C_MAX",
]

CERTIFIED = "certified_positive"
COUNTEREXAMPLE = "counterexample_found"
INCONCLUSIVE = "inconclusive"

C_MAX = 1.0 - 1e-9


@dataclass
class CertificateReport:
    n: int | None
    range: tuple[float, float]
    verdict: str
    subintervals_examined: int
    max_depth_reached: int
    witness: float | None = None
    leaves: list[dict] = field(default_factory=list, repr=False)

    def to_dict(self, include_leaves: bool = False) -> dict:
        d = asdict(self)
        d["range"] = list(self.range)
        if not include_leaves:
            d.pop("leaves")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CertificateReport":
        d = dict(d)
        d["range"] = tuple(d["range"])
        return cls(**d)

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED


def certify_positive(
    f: Callable[[Interval], Interval],
    range_: tuple[float, float],
    max_depth: int = 60,
    *,
    n: int | None = None,
    point_eval: Callable[[float], float] | None = None,
) -> CertificateReport:
    """Try to prove ``f > 0`` on ``[lo, hi]`` by adaptive bisection.

    ``f`` maps an :class:`Interval` to an enclosure of its image.  A box
    whose enclosure has ``lo > 0`` is an accepted leaf; one with ``hi < 0``
    ends the search with its midpoint as witness.  Boxes on which ``f``
    cannot be evaluated (division by an interval through zero) are split
    like undecided ones.  ``point_eval`` is the plain-float version of
    ``f``; when given, a witness is only reported after it confirms the
    sign.  Boxes are processed breadth first, so the result is
    deterministic.
    """
    lo, hi = map(float, range_)
    if not lo < hi:
        raise DomainError(f"empty range [{lo}, {hi}]")
    queue = deque([(Interval(lo, hi), 0)])
    examined = 0
    deepest = 0
    leaves = []
    verdict = CERTIFIED
    witness = None
    while queue:
        box, depth = queue.popleft()
        examined += 1
        deepest = max(deepest, depth)
        try:
            enc = f(box)
        except IntervalDomainError:
            enc = None
        if enc is not None and enc.lo > 0.0:
            leaves.append({"interval": box.to_list(), "lower_bound": enc.lo})
            continue
        if enc is not None and enc.hi < 0.0:
            x = box.mid
            if point_eval is None or point_eval(x) <= 0.0:
                verdict, witness = COUNTEREXAMPLE, x
                break
        if depth >= max_depth:
            verdict = INCONCLUSIVE
            break
        left, right = box.split()
        if left.width == 0.0 or right.width == 0.0:
            verdict = INCONCLUSIVE
            break
        queue.append((left, depth + 1))
        queue.append((right, depth + 1))
    return CertificateReport(n, (lo, hi), verdict, examined, deepest, witness, leaves)


# --- the inequalities ------------------------------------------------------


def _parts(n: int, c: Interval):
    c2 = c.sqr()
    one_m = 1.0 - c2  # 1 - c^2 > 0 for c in (0, 1)
    t = (n + 3) * c2 - 4.0
    root = (2.0 * one_m).sqrt()
    return c2, one_m, t, root


def combined_inequality(n: int, c: Interval | float) -> tuple[Interval, Interval]:
    """Enclosures of the combined expression and of its eigenvalue coefficient.

    The expression is

        (1/2) [ (n+1)/n c + T/(2 sqrt(2(1-c^2))) ] mu
            + (1/n) [ c + T/(2 sqrt(2(1-c^2))) ] + 1 + T/(2(1-c^2))

    with ``T = (n+3) c^2 - 4`` and ``mu`` replaced by its lower bound
    ``n / (1 - c^2)``.  That substitution is only valid where the
    coefficient of ``mu`` (the second returned interval) is nonnegative.
    """
    c = c if isinstance(c, Interval) else Interval.point(c)
    if c.lo <= 0.0 or c.hi >= 1.0:
        raise IntervalDomainError(f"c must lie inside (0, 1), got {c}")
    c2, one_m, t, root = _parts(n, c)
    g = t / (2.0 * root)
    # (n+1)/n is not a double for n = 3; enclose it
    bracket = Interval.hull((n + 1) / n) * c + g
    mu = n / one_m
    value = 0.5 * bracket * mu + (c + g) / n + (1.0 + t / (2.0 * one_m))
    return value, bracket


def combined_inequality_float(n: int, c: float) -> tuple[float, float]:
    """Plain double evaluation of :func:`combined_inequality`."""
    one_m = 1.0 - c * c
    t = (n + 3) * c * c - 4.0
    g = t / (2.0 * math.sqrt(2.0 * one_m))
    bracket = (n + 1) / n * c + g
    mu = n / one_m
    return 0.5 * bracket * mu + (c + g) / n + 1.0 + t / (2.0 * one_m), bracket


def certify_combined(n: int, c_min: float, c_max: float = C_MAX, max_depth: int = 60) -> CertificateReport:
    """Certify the combined expression and its eigenvalue coefficient on [c_min, c_max]."""

    def f(c):
        value, bracket = combined_inequality(n, c)
        return value.min(bracket)

    def fx(c):
        return min(combined_inequality_float(n, c))

    return certify_positive(f, (c_min, c_max), max_depth, n=n, point_eval=fx)


def certified_threshold(n: int, tol: float = 1e-6, max_depth: int = 60) -> float:
    """Smallest c* (to ``tol``) from which the combined inequality is certified.

    Outer bisection on the left end of [c*, 1 - 1e-9]; certifiability is
    monotone in c* because the certified range shrinks as c* grows.
    """
    check_dimension(n, minimum=3)
    if n not in (3, 4):
        raise DomainError(f"the combined estimate is only used for n = 3, 4, got {n}")
    if tol < 1e-6:
        raise DomainError(f"tol must be >= 1e-6, got {tol}")
    lo, hi = 0.3, zeta(n)[0]
    if certify_combined(n, lo, max_depth=max_depth).certified:
        return lo
    if not certify_combined(n, hi, max_depth=max_depth).certified:
        raise DomainError(f"combined inequality not certifiable from zeta({n}) = {hi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if certify_combined(n, mid, max_depth=max_depth).certified:
            hi = mid
        else:
            lo = mid
    return hi


def method1_first(n: int, c: Interval) -> Interval:
    """c + ((n+3)c^2 - 4) / (4(1-c^2)) * sqrt(2(1-c^2))."""
    c2, one_m, t, root = _parts(n, c)
    return c + t / (4.0 * one_m) * root


def method1_second(n: int, c: Interval) -> Interval:
    """1/2 + ((n+3)c^2 - 4) / (4(1-c^2))."""
    c2, one_m, t, _ = _parts(n, c)
    return 0.5 + t / (4.0 * one_m)


def method1_first_float(n: int, c: float) -> float:
    one_m = 1.0 - c * c
    return c + ((n + 3) * c * c - 4.0) / (4.0 * one_m) * math.sqrt(2.0 * one_m)


def method1_second_float(n: int, c: float) -> float:
    return 0.5 + ((n + 3) * c * c - 4.0) / (4.0 * (1.0 - c * c))


@dataclass
class Method1Certificate:
    n: int
    first_positive: CertificateReport
    first_fails_below: CertificateReport
    second_positive: CertificateReport
    second_negative: CertificateReport

    @property
    def ok(self) -> bool:
        return (
            self.first_positive.verdict == CERTIFIED
            and self.first_fails_below.verdict == COUNTEREXAMPLE
            and self.second_positive.verdict == CERTIFIED
            and self.second_negative.verdict == CERTIFIED
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "first_positive": self.first_positive.to_dict(),
            "first_fails_below": self.first_fails_below.to_dict(),
            "second_positive": self.second_positive.to_dict(),
            "second_negative": self.second_negative.to_dict(),
        }


def certify_method1_conditions(n: int, max_depth: int = 60) -> Method1Certificate:
    """Certify where the two first-method conditions hold.

    The first expression is proven positive on
    ``[zeta + 1e-6, 2/sqrt(n+3) - 1e-6]`` and shown to fail at
    ``zeta - 1e-3``; the second is proven positive above and negative
    below ``sqrt(2/(n+1))`` (1e-6 away on either side).
    """
    check_dimension(n, minimum=3)
    z, _ = zeta(n)
    bm = 2.0 / math.sqrt(n + 3)
    first_pos = certify_positive(
        lambda c: method1_first(n, c),
        (z + 1e-6, bm - 1e-6),
        max_depth,
        n=n,
        point_eval=lambda c: method1_first_float(n, c),
    )
    below = z - 1e-3
    first_fail = certify_positive(
        lambda c: method1_first(n, c),
        (below - 1e-9, below),
        max_depth,
        n=n,
        point_eval=lambda c: method1_first_float(n, c),
    )
    root2 = math.sqrt(2.0 / (n + 1))
    second_pos = certify_positive(
        lambda c: method1_second(n, c),
        (root2 + 1e-6, C_MAX),
        max_depth,
        n=n,
        point_eval=lambda c: method1_second_float(n, c),
    )
    second_neg = certify_positive(
        lambda c: -method1_second(n, c),
        (1e-3, root2 - 1e-6),
        max_depth,
        n=n,
        point_eval=lambda c: -method1_second_float(n, c),
    )
    return Method1Certificate(n, first_pos, first_fail, second_pos, second_neg)
