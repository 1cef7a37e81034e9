import math

import numpy as np
import pytest
import sympy as sp

from rigidball.errors import DomainError, PreconditionError
from rigidball.geometry import BallGeometry
from rigidball.identities import (
    SuiteResult,
    divergence_radial,
    divfree_rk4,
    eigenfunction_profile,
    make_divfree,
    random_profile,
    run_identity_suite,
    verify_divergence_identity,
    verify_ibp_identity,
    verify_linearized_H,
    verify_linearized_R,
    verify_trace_estimate,
    verify_variational,
    warped_mean_curvature,
    warped_scalar_curvature,
)
from rigidball.quadrature import RadialFunction, RadialTensor

COS = RadialFunction.cos()
ONE = RadialFunction.constant(1.0)
ZERO = RadialFunction.constant(0.0)


# --- independent oracles ------------------------------------------------------


def _christoffel_divergence(a, b, x, eps=1e-5):
    """(div h)_r on S^3 from numeric Christoffel symbols in (r, theta, phi)."""

    def metric(p):
        r, th = p[0], p[1]
        return np.diag([1.0, math.sin(r) ** 2, (math.sin(r) * math.sin(th)) ** 2])

    def tensor(p):
        r = np.array([p[0]])
        return metric(p) * np.array([a(r)[0], b(r)[0], b(r)[0]])

    def d(fn, p):
        out = []
        for k in range(3):
            e = np.zeros(3)
            e[k] = eps
            out.append((fn(p + e) - fn(p - e)) / (2 * eps))
        return np.array(out)  # out[k] = d_k fn

    g, ginv = metric(x), np.linalg.inv(metric(x))
    dg, dh, h = d(metric, x), d(tensor, x), tensor(x)
    gamma = 0.5 * (np.einsum("kl,ijl->kij", ginv, dg) + np.einsum("kl,jil->kij", ginv, dg)
                   - np.einsum("kl,lij->kij", ginv, dg))
    # nabla_k h_ij
    nab = dh - np.einsum("lki,lj->kij", gamma, h) - np.einsum("lkj,il->kij", gamma, h)
    return np.einsum("ik,kij->j", ginv, nab)


def test_divergence_trivial_cases():
    r = np.linspace(0.1, 1.0, 7)
    np.testing.assert_allclose(divergence_radial(RadialTensor(ONE, ONE, 3), 3, r), 0.0, atol=1e-15)
    np.testing.assert_allclose(divergence_radial(RadialTensor(COS, COS, 3), 3, r), -np.sin(r), atol=1e-15)
    with pytest.raises(DomainError):
        divergence_radial(RadialTensor(COS, COS, 3), 3, np.array([0.0]))


def test_divergence_against_christoffel_oracle():
    rng = np.random.default_rng(7)
    for _ in range(4):
        a, b = random_profile(rng), random_profile(rng)
        h = RadialTensor(a, b, 3)
        for r in (0.2, 0.6, 1.1):
            div = _christoffel_divergence(a, b, np.array([r, 0.9, 0.4]))
            assert div[0] == pytest.approx(divergence_radial(h, 3, np.array([r]))[0], abs=1e-8)
            assert abs(div[1]) < 1e-8 and abs(div[2]) < 1e-8


def test_make_divfree_fixed_point():
    h = make_divfree(RadialFunction.constant(0.7), 4, 1.0)
    r = np.linspace(0.0, 1.0, 11)
    np.testing.assert_allclose(h.a(r), 0.7, rtol=1e-14)


@pytest.mark.parametrize("n", [3, 5])
def test_make_divfree_residual_and_pole(n):
    h = make_divfree(COS, n, 1.2)
    r = np.linspace(0.01, 1.2, 100)
    assert np.max(np.abs(divergence_radial(h, n, r))) <= 1e-9
    assert h.pole_mismatch() < 1e-14
    assert h.a.check_consistency(1.2) < 1e-7


def test_make_divfree_agrees_with_rk4():
    b = RadialFunction.cos_poly([0.2, 1.0, -0.5])
    h = make_divfree(b, 4, 1.0)
    r, a = divfree_rk4(b, 4, 1.0)
    np.testing.assert_allclose(a, h.a(r), atol=1e-10)


def test_divergence_identity_divfree():
    res = verify_divergence_identity(make_divfree(COS, 3, 0.9), 3, 0.9)
    assert res.residual <= 1e-10


def test_divergence_identity_general_and_negative_control():
    h = RadialTensor(RadialFunction.cos_poly([0.1, 2.0]), RadialFunction.cos_poly([1.0, 0.0, -1.0]), 4)
    assert verify_divergence_identity(h, 4, 1.0).residual <= 1e-10
    assert verify_divergence_identity(h, 4, 1.0, include_div_term=False).residual > 1e-3


def test_trace_estimate():
    r = verify_trace_estimate(RadialTensor(ONE, ONE, 3), 3, 0.9, math.sqrt(2))
    assert r.slack > 0
    h = make_divfree(COS, 3, 1.2)
    for w in (0.5, math.sqrt(2), 4.0):
        assert verify_trace_estimate(h, 3, 1.2, w).slack >= -1e-10


def test_trace_estimate_preconditions():
    with pytest.raises(PreconditionError):
        verify_trace_estimate(RadialTensor(COS, ONE, 3), 3, 0.9, 1.0)
    with pytest.raises(DomainError):
        verify_trace_estimate(RadialTensor(ONE, ONE, 3), 3, 0.9, 0.0)


def test_ibp_identity_constant():
    n, delta = 4, 1.1
    g = BallGeometry(n, delta)
    res = verify_ibp_identity(ONE, n, delta)
    assert res.lhs == pytest.approx(-g.omega * g.s**n, rel=1e-14)
    assert res.residual <= 1e-13


def test_ibp_identity_lambda_and_polynomial():
    assert verify_ibp_identity(COS, 3, 0.9).residual <= 1e-12
    assert verify_ibp_identity(RadialFunction.poly([1.0, 0.0, 1.0]), 3, 0.9).residual <= 1e-10


def test_variational_constants_and_trial():
    r = verify_variational(ONE, 3, 1.0)
    assert abs(r.lhs) < 1e-14 and abs(r.rhs) < 1e-12
    trial = verify_variational(RadialFunction.poly([0.0, 1.0]), 3, 1.0, angular=True)
    assert trial.slack >= 0


@pytest.mark.parametrize("n,delta", [(3, 0.9), (5, 1.3)])
def test_variational_saturates_at_eigenfunction(n, delta):
    ef, mu = eigenfunction_profile(n, delta)
    r = verify_variational(ef, n, delta, angular=True, mu=mu)
    assert abs(r.slack) <= 1e-6 * r.lhs


# --- curvature ---------------------------------------------------------------


def _sympy_scalar_curvature(n, a_expr, b_expr, t_val):
    r = sp.Symbol("r")
    th = sp.symbols(f"th1:{n}")
    coords = (r, *th)
    t = sp.Rational(t_val).limit_denominator(10**12) if t_val else 0
    A = 1 + t * a_expr(r)
    B = 1 + t * b_expr(r)
    diag = [A]
    w = sp.sin(r) ** 2 * B
    for k in range(n - 1):
        diag.append(w)
        w = w * sp.sin(th[k]) ** 2
    g = sp.diag(*diag)
    ginv = sp.diag(*[1 / x for x in diag])
    dim = n
    Gam = [[[sum(ginv[k, l] * (sp.diff(g[j, l], coords[i]) + sp.diff(g[i, l], coords[j]) - sp.diff(g[i, j], coords[l]))
                 for l in range(dim)) / 2 for j in range(dim)] for i in range(dim)] for k in range(dim)]
    R = 0
    for i in range(dim):
        Ric = 0
        for k in range(dim):
            Ric += sp.diff(Gam[k][i][i], coords[k]) - sp.diff(Gam[k][i][k], coords[i])
            for l in range(dim):
                Ric += Gam[k][k][l] * Gam[l][i][i] - Gam[k][i][l] * Gam[l][i][k]
        R += ginv[i, i] * Ric
    return sp.lambdify((r, *th), R, "mpmath")


@pytest.mark.parametrize("n", [3, 4])
def test_scalar_curvature_against_sympy(n):
    a_sym = lambda r: sp.Rational(3, 10) + sp.cos(r) / 5 - sp.cos(r) ** 2 / 10
    b_sym = lambda r: sp.Rational(1, 2) - sp.cos(r) ** 3 / 4
    a = RadialFunction.cos_poly([0.3, 0.2, -0.1])
    b = RadialFunction.cos_poly([0.5, 0.0, 0.0, -0.25])
    t = 0.375
    R = _sympy_scalar_curvature(n, a_sym, b_sym, t)
    rs = np.array([0.2, 0.7, 1.3])
    ours = warped_scalar_curvature(a, b, t, rs, n)
    for rv, val in zip(rs, ours):
        oracle = float(R(float(rv), *([0.8] * (n - 1))))
        assert val == pytest.approx(oracle, rel=1e-11)


def test_scalar_curvature_round():
    r = np.linspace(0.1, 1.4, 9)
    for n in (3, 6):
        np.testing.assert_allclose(warped_scalar_curvature(COS, COS, 0.0, r, n), n * (n - 1), rtol=1e-13)


def test_scalar_curvature_scaling():
    # (1 + t) g has curvature n(n-1) / (1 + t)
    r = np.linspace(0.1, 1.4, 9)
    np.testing.assert_allclose(warped_scalar_curvature(ONE, ONE, 0.25, r, 4), 12 / 1.25, rtol=1e-13)


def test_degenerate_metric():
    with pytest.raises(DomainError):
        warped_scalar_curvature(ONE, ONE, -1.0, np.array([0.5]), 3)


def test_linearized_R():
    phi = RadialFunction.constant(0.8)
    assert verify_linearized_R(RadialTensor(phi, phi, 3), 3, 1.0) <= 1e-8
    assert verify_linearized_R(make_divfree(COS, 3, 1.0), 3, 1.0) <= 1e-6
    with pytest.raises(PreconditionError):
        verify_linearized_R(RadialTensor(COS, ONE, 3), 3, 1.0)


def test_linearized_H_closed_forms():
    n, delta = 4, 0.8
    t = 1e-5
    d = np.array([delta])
    dh = (warped_mean_curvature(ONE, ZERO, t, d, n) - warped_mean_curvature(ONE, ZERO, -t, d, n))[0] / (2 * t)
    assert 2 * dh == pytest.approx(-(n - 1) / math.tan(delta), rel=1e-9)
    assert verify_linearized_H(RadialTensor(ONE, ZERO, n), n, delta) <= 1e-8
    b = RadialFunction.poly([-delta, 1.0])  # b(delta) = 0
    assert verify_linearized_H(RadialTensor(ZERO, b, n), n, delta) <= 1e-8
    generic = RadialTensor(RadialFunction.cos_poly([0.2, -0.4, 0.9]), RadialFunction.poly([delta**2, 0.0, -1.0]), n)
    assert verify_linearized_H(generic, n, delta) <= 1e-8
    with pytest.raises(PreconditionError):
        verify_linearized_H(RadialTensor(ONE, ONE, n), n, delta)


def test_suite_small_run():
    res = run_identity_suite(4, 0.5, profiles=4)
    assert res.failures() == []
    assert SuiteResult.from_dict(res.to_dict()) == res
    # seeded: identical reruns
    assert run_identity_suite(4, 0.5, profiles=4) == res
