"""Pure-Python twin of ``_rk4_ext.rk4_outward``; same arithmetic, same results."""
from math import expm1

_RESCALE_AT = 1e100


def rk4_outward(beta, eps, x_min, x_max, step):
    n = max(1, int((x_max - x_min) / step + 0.5))
    h = (x_max - x_min) / n
    half = 0.5 * h
    sixth = h / 6.0
    x = x_min
    p = x_min - 0.5 * beta * x_min * x_min
    d = 1.0 - beta * x_min
    v0 = beta / expm1(x) + eps
    nodes = 0
    for i in range(n):
        vm = beta / expm1(x + half) + eps
        v1 = beta / expm1(x + h) + eps
        k1d = -v0 * p
        k2p = d + half * k1d
        k2d = -vm * (p + half * d)
        k3p = d + half * k2d
        k3d = -vm * (p + half * k2p)
        k4p = d + h * k3d
        k4d = -v1 * (p + h * k3p)
        pn = p + sixth * (d + 2.0 * k2p + 2.0 * k3p + k4p)
        d = d + sixth * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
        if (pn < 0.0) != (p < 0.0):
            nodes += 1
        p = pn
        x = x_min + (i + 1) * h
        v0 = v1
        if abs(p) > _RESCALE_AT:
            p /= _RESCALE_AT
            d /= _RESCALE_AT
    return nodes, p, d
