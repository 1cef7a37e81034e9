# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: fixed-step RK4 for the radial eigen-equation."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def shoot(double mu, const double[::1] p, const double[::1] q, double h,
          double u0, double v0):
    """Integrate u'' + p u' + (mu - q) u = 0 across the grid.

    ``p`` and ``q`` are sampled at the half-step nodes ``r0 + j*h/2``,
    ``j = 0..2N``.  Returns ``(u, u')`` at the right end.
    """
    cdef Py_ssize_t nsteps = (p.shape[0] - 1) // 2
    cdef Py_ssize_t i, j
    cdef double u = u0, v = v0
    cdef double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, ut, vt
    cdef double hh = 0.5 * h, h6 = h / 6.0
    for i in range(nsteps):
        j = 2 * i
        k1u = v
        k1v = -p[j] * v - (mu - q[j]) * u
        ut = u + hh * k1u
        vt = v + hh * k1v
        k2u = vt
        k2v = -p[j + 1] * vt - (mu - q[j + 1]) * ut
        ut = u + hh * k2u
        vt = v + hh * k2v
        k3u = vt
        k3v = -p[j + 1] * vt - (mu - q[j + 1]) * ut
        ut = u + h * k3u
        vt = v + h * k3v
        k4u = vt
        k4v = -p[j + 2] * vt - (mu - q[j + 2]) * ut
        u += h6 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v += h6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    return u, v


def shoot_profile(double mu, const double[::1] p, const double[::1] q,
                  double h, double u0, double v0):
    """Like :func:`shoot` but return ``u`` and ``u'`` at every step node."""
    cdef Py_ssize_t nsteps = (p.shape[0] - 1) // 2
    cdef Py_ssize_t i, j
    cdef cnp.ndarray[cnp.float64_t, ndim=1] us = np.empty(nsteps + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vs = np.empty(nsteps + 1)
    cdef double u = u0, v = v0
    cdef double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, ut, vt
    cdef double hh = 0.5 * h, h6 = h / 6.0
    us[0] = u
    vs[0] = v
    for i in range(nsteps):
        j = 2 * i
        k1u = v
        k1v = -p[j] * v - (mu - q[j]) * u
        ut = u + hh * k1u
        vt = v + hh * k1v
        k2u = vt
        k2v = -p[j + 1] * vt - (mu - q[j + 1]) * ut
        ut = u + hh * k2u
        vt = v + hh * k2v
        k3u = vt
        k3v = -p[j + 1] * vt - (mu - q[j + 1]) * ut
        ut = u + h * k3u
        vt = v + h * k3v
        k4u = vt
        k4v = -p[j + 2] * vt - (mu - q[j + 2]) * ut
        u += h6 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v += h6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        us[i + 1] = u
        vs[i + 1] = v
    return us, vs


def relax(const double[::1] p, const double[::1] b, double h, double a0):
    """RK4 for a' = -p (a - b) with ``p``, ``b`` on half-step nodes."""
    cdef Py_ssize_t nsteps = (p.shape[0] - 1) // 2
    cdef Py_ssize_t i, j
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(nsteps + 1)
    cdef double a = a0, k1, k2, k3, k4
    out[0] = a
    for i in range(nsteps):
        j = 2 * i
        k1 = -p[j] * (a - b[j])
        k2 = -p[j + 1] * (a + 0.5 * h * k1 - b[j + 1])
        k3 = -p[j + 1] * (a + 0.5 * h * k2 - b[j + 1])
        k4 = -p[j + 2] * (a + h * k3 - b[j + 2])
        a += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = a
    return out
