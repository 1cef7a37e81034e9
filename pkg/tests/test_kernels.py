import os
import subprocess
import sys

import numpy as np
import pytest

from rigidball import _kernels_py, kernels

compiled = pytest.importorskip("rigidball._kernels", reason="extension not built")


def _coeffs(steps=2000, n=4, r0=1e-4, delta=1.0):
    h = (delta - r0) / steps
    r = r0 + 0.5 * h * np.arange(2 * steps + 1)
    return (n - 1) / np.tan(r), (n - 1) / np.sin(r) ** 2, h


def test_backend_selected():
    assert kernels.BACKEND == "cython"


def test_shoot_backends_agree():
    p, q, h = _coeffs()
    for mu in (2.0, 7.5, 30.0):
        a = compiled.shoot(mu, p, q, h, 1e-4, 1.0)
        b = _kernels_py.shoot(mu, p, q, h, 1e-4, 1.0)
        np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-15)


def test_profile_backends_agree():
    p, q, h = _coeffs(500)
    ua, va = compiled.shoot_profile(6.0, p, q, h, 1e-4, 1.0)
    ub, vb = _kernels_py.shoot_profile(6.0, p, q, h, 1e-4, 1.0)
    assert len(ua) == 501
    np.testing.assert_allclose(ua, ub, rtol=1e-13, atol=1e-16)
    np.testing.assert_allclose(va, vb, rtol=1e-13, atol=1e-16)
    # the last profile point is what shoot returns
    assert np.isclose(ua[-1], compiled.shoot(6.0, p, q, h, 1e-4, 1.0)[0], rtol=1e-15)


def test_relax_backends_agree():
    steps = 400
    h = 1.0 / steps
    r = 0.01 + 0.5 * h * np.arange(2 * steps + 1)
    p, b = 2.0 / np.tan(r), np.cos(r)
    np.testing.assert_allclose(compiled.relax(p, b, h, 1.0), _kernels_py.relax(p, b, h, 1.0), rtol=1e-13)


def test_relax_exact_for_constant():
    steps = 100
    p = np.ones(2 * steps + 1)
    b = np.full(2 * steps + 1, 3.0)
    np.testing.assert_allclose(compiled.relax(p, b, 0.01, 3.0), 3.0)


def test_pure_python_forced_by_env():
    env = dict(os.environ, RIGIDBALL_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from rigidball import kernels, eigen; print(kernels.BACKEND, eigen.mu_shooting(3, 1.0, 1e-8, steps=2000).mu)"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout.split()
    assert out[0] == "python"
    from rigidball.eigen import mu_shooting

    assert float(out[1]) == pytest.approx(mu_shooting(3, 1.0, 1e-8, steps=2000).mu, rel=1e-12)
