import math

import mpmath
import pytest

from rigidball.errors import DomainError
from rigidball.geometry import (
    BallGeometry,
    boundary_coefficients,
    lambda_profile,
    sin_power_integral,
    sphere_area,
)


def test_lambda_profile_endpoints():
    g = BallGeometry(3, 1.0)
    assert lambda_profile(g, 0.0) == 1.0
    assert lambda_profile(g, 1.0) == g.c
    assert lambda_profile(g, 0.5) == pytest.approx(0.8775825619, abs=1e-10)


@pytest.mark.parametrize("r", [-1e-9, 1.0 + 1e-9])
def test_lambda_profile_domain(r):
    with pytest.raises(DomainError):
        lambda_profile(BallGeometry(3, 1.0), r)


@pytest.mark.parametrize("delta", [0.0, -0.1, math.pi / 2, 2.0])
def test_ball_rejects_bad_radius(delta):
    with pytest.raises(DomainError):
        BallGeometry(3, delta)


def test_ball_rejects_small_dimension():
    with pytest.raises(DomainError):
        BallGeometry(1, 0.5)


@pytest.mark.parametrize("n", [2, 3, 7])
@pytest.mark.parametrize("delta", [1e-3, 0.4, 1.2, 1.5707])
def test_ball_invariants(n, delta):
    g = BallGeometry(n, delta)
    assert abs(g.c**2 + g.s**2 - 1.0) <= 4 * math.ulp(1.0)
    assert 0 < g.c < 1 and 0 < g.s < 1
    assert g.mean_curvature_bar > 0
    assert g.boundary_area == pytest.approx(sphere_area(n - 1) * g.s ** (n - 1), rel=1e-15)
    assert g.lambda_weighted_volume == pytest.approx(sphere_area(n - 1) * g.s**n / n, rel=1e-15)
    assert g.dnu_lambda == -g.s
    assert g.scalar_curvature == n * (n - 1)


def test_sphere_area_closed_forms():
    assert sphere_area(1) == pytest.approx(2 * math.pi, rel=1e-15)
    assert sphere_area(2) == pytest.approx(4 * math.pi, rel=1e-15)
    assert sphere_area(3) == pytest.approx(2 * math.pi**2, rel=1e-15)
    for k in range(1, 30):
        expected = 2 * math.pi ** ((k + 1) / 2) / math.gamma((k + 1) / 2)
        assert sphere_area(k) == pytest.approx(expected, rel=1e-13)


def test_sin_power_integral_trivial():
    assert sin_power_integral(2, math.pi / 3) == pytest.approx(0.5, rel=1e-15)
    assert sin_power_integral(3, math.pi / 2) == pytest.approx(math.pi / 4, rel=1e-15)


@pytest.mark.parametrize("delta", [0.0, -1.0, math.pi / 2 + 1e-9])
def test_sin_power_integral_domain(delta):
    with pytest.raises(DomainError):
        sin_power_integral(3, delta)


def _oracle(n, delta):
    with mpmath.workdps(40):
        return float(mpmath.quad(lambda t: mpmath.sin(t) ** (n - 1), [0, delta]))


def test_sin_power_integral_example_n5():
    assert sin_power_integral(5, 0.8) == pytest.approx(_oracle(5, 0.8), rel=1e-13)


@pytest.mark.parametrize("n", range(2, 22))
def test_sin_power_integral_grid(n):
    # 20 x 20 grid against 40-digit adaptive quadrature
    for i in range(1, 21):
        delta = i * (math.pi / 2) / 20
        assert sin_power_integral(n, delta) == pytest.approx(_oracle(n, delta), rel=1e-14, abs=1e-300)


def test_boundary_coefficient_zeros():
    for n in (3, 4, 9):
        A, _ = boundary_coefficients(BallGeometry(n, math.acos(2 / math.sqrt(n + 3))))
        _, B = boundary_coefficients(BallGeometry(n, math.acos(1 / math.sqrt(n + 1))))
        assert abs(A) < 1e-15 and abs(B) < 1e-15


def test_boundary_coefficients_from_mean_curvature():
    g = BallGeometry(3, 0.7)
    n, c, s, H = 3, g.c, g.s, g.mean_curvature_bar
    A, B = boundary_coefficients(g)
    assert A == pytest.approx(0.25 * H * c - s, abs=1e-14)
    assert B == pytest.approx(n / (2 * (n - 1)) * H * c - s / 2, abs=1e-14)
