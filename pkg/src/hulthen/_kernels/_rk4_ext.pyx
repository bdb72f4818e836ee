# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 outward integration of psi'' = -(beta / (e^x - 1) + eps) psi."""
from libc.math cimport expm1, fabs

cdef double RESCALE_AT = 1e100


def rk4_outward(double beta, double eps, double x_min, double x_max, double step):
    """Integrate from ``x_min`` to ``x_max``; return ``(nodes, psi, dpsi)``.

    Starts on the regular solution ``psi ~ x - beta x^2 / 2``. ``psi`` and
    ``dpsi`` are rescaled together when they grow large, so only their ratio
    and the node count are meaningful.
    """
    cdef long n = <long>((x_max - x_min) / step + 0.5)
    if n < 1:
        n = 1
    cdef double h = (x_max - x_min) / n
    cdef double x = x_min
    cdef double p = x_min - 0.5 * beta * x_min * x_min
    cdef double d = 1.0 - beta * x_min
    cdef double v0 = beta / expm1(x) + eps
    cdef double vm, v1, k1p, k1d, k2p, k2d, k3p, k3d, k4p, k4d, pn
    cdef long nodes = 0
    cdef long i
    for i in range(n):
        vm = beta / expm1(x + 0.5 * h) + eps
        v1 = beta / expm1(x + h) + eps
        k1p = d
        k1d = -v0 * p
        k2p = d + 0.5 * h * k1d
        k2d = -vm * (p + 0.5 * h * k1p)
        k3p = d + 0.5 * h * k2d
        k3d = -vm * (p + 0.5 * h * k2p)
        k4p = d + h * k3d
        k4d = -v1 * (p + h * k3p)
        pn = p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        d = d + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
        if (pn < 0.0) != (p < 0.0):
            nodes += 1
        p = pn
        x = x_min + (i + 1) * h
        v0 = v1
        if fabs(p) > RESCALE_AT:
            p /= RESCALE_AT
            d /= RESCALE_AT
    return nodes, p, d
