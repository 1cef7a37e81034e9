"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``.

Same signatures and the same floating-point operation order, so both
backends agree to the last few ulp.
"""

import numpy as np


def _rk4(mu, p, q, h, u, v, record):
    p = p.tolist() if hasattr(p, "tolist") else list(p)
    q = q.tolist() if hasattr(q, "tolist") else list(q)
    nsteps = (len(p) - 1) // 2
    hh = 0.5 * h
    h6 = h / 6.0
    us = [u] if record else None
    vs = [v] if record else None
    for i in range(nsteps):
        j = 2 * i
        p0, p1, p2 = p[j], p[j + 1], p[j + 2]
        m0, m1, m2 = mu - q[j], mu - q[j + 1], mu - q[j + 2]
        k1u = v
        k1v = -p0 * v - m0 * u
        ut = u + hh * k1u
        vt = v + hh * k1v
        k2u = vt
        k2v = -p1 * vt - m1 * ut
        ut = u + hh * k2u
        vt = v + hh * k2v
        k3u = vt
        k3v = -p1 * vt - m1 * ut
        ut = u + h * k3u
        vt = v + h * k3v
        k4u = vt
        k4v = -p2 * vt - m2 * ut
        u += h6 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v += h6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if record:
            us.append(u)
            vs.append(v)
    if record:
        return np.array(us), np.array(vs)
    return u, v


def shoot(mu, p, q, h, u0, v0):
    return _rk4(mu, p, q, h, u0, v0, False)


def shoot_profile(mu, p, q, h, u0, v0):
    return _rk4(mu, p, q, h, u0, v0, True)


def relax(p, b, h, a0):
    p = p.tolist() if hasattr(p, "tolist") else list(p)
    b = b.tolist() if hasattr(b, "tolist") else list(b)
    nsteps = (len(p) - 1) // 2
    a = a0
    out = [a]
    for i in range(nsteps):
        j = 2 * i
        k1 = -p[j] * (a - b[j])
        k2 = -p[j + 1] * (a + 0.5 * h * k1 - b[j + 1])
        k3 = -p[j + 1] * (a + 0.5 * h * k2 - b[j + 1])
        k4 = -p[j + 2] * (a + h * k3 - b[j + 2])
        a += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out.append(a)
    return np.array(out)
