import math

import numpy as np
import pytest

from rigidball.errors import DomainError
from rigidball.geometry import BallGeometry, sin_power_integral, sphere_area
from rigidball.quadrature import QuadratureRule, RadialFunction, RadialTensor, gauss_legendre


def test_gauss_legendre_exactness():
    x, w = gauss_legendre(8)
    for k in range(16):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert float(np.dot(w, x**k)) == pytest.approx(exact, abs=1e-14)


def test_rule_layout():
    rule = QuadratureRule(0.9, 3)
    assert rule.nodes.shape == (512,)
    assert np.all((rule.nodes > 0) & (rule.nodes < 0.9))
    assert rule.integrate(np.ones(512)) == pytest.approx(0.9, rel=1e-15)
    assert rule.doubled().m == 1024
    with pytest.raises(DomainError):
        QuadratureRule(0.9, 3, m=100)


@pytest.mark.parametrize("n", [2, 3, 6])
def test_rule_volume_matches_closed_form(n):
    rule = QuadratureRule(1.1, n)
    vol = rule.volume(np.ones_like(rule.nodes))
    assert vol == pytest.approx(sphere_area(n - 1) * sin_power_integral(n, 1.1), rel=1e-14)
    assert vol == pytest.approx(BallGeometry(n, 1.1).volume, rel=1e-14)


def test_integral_of_lambda_is_weighted_volume():
    # int_B cos r = omega s^n / n
    rule = QuadratureRule(0.8, 4)
    assert rule.volume(np.cos(rule.nodes)) == pytest.approx(BallGeometry(4, 0.8).lambda_weighted_volume, rel=1e-14)


@pytest.mark.parametrize(
    "fn",
    [
        RadialFunction.cos(),
        RadialFunction.constant(2.5),
        RadialFunction.poly([1.0, 0.0, 1.0]),
        RadialFunction.cos_poly([0.3, -1.2, 0.7, 2.0]),
    ],
)
def test_radial_function_derivatives(fn):
    assert fn.check_consistency(1.2) < 1e-8


def test_from_samples_hermite():
    r = np.linspace(0, 1, 400)
    fn = RadialFunction.from_samples(r, np.sin(r), np.cos(r), lambda x, u, du: -u)
    x = np.linspace(0.01, 0.99, 50)
    assert np.max(np.abs(fn(x) - np.sin(x))) < 1e-11
    assert np.max(np.abs(fn.d2(x) + np.sin(x))) < 1e-11


def test_radial_tensor_scalars():
    h = RadialTensor(RadialFunction.constant(2.0), RadialFunction.constant(2.0), 4)
    r = np.array([0.3, 0.7])
    np.testing.assert_allclose(h.trace(r), 8.0)
    np.testing.assert_allclose(h.norm2(r), 16.0)
    np.testing.assert_allclose(h.laplacian_trace(r), 0.0)
    assert h.pole_mismatch() == 0.0
