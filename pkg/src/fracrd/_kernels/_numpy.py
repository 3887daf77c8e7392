"""Pure numpy implementations of the hot elementwise kernels.

Every function here has a twin in :mod:`._cython` with the same signature and
the same floating-point evaluation order, so both backends agree bitwise.
"""
import numpy as np

NAME = "numpy"


def etd_coefficients(y, tau):
    """Return ``(R13, Q13, phi, phi1, phi2, phi3)`` evaluated elementwise at ``y >= 0``."""
    y = np.asarray(y, dtype=np.float64)
    d1 = 24.0 + y * (18.0 + y * (6.0 + y))
    d2 = 192.0 + y * (72.0 + y * (12.0 + y))
    r13 = (24.0 - 6.0 * y) / d1
    q13 = 24.0 * (8.0 - y) / d2
    phi = tau * (96.0 + y * (12.0 + y)) / d2
    phi1 = tau * (4.0 - y) / d1
    phi2 = 2.0 * tau * (4.0 + y) / d1
    phi3 = tau * (4.0 + y * (3.0 + y)) / d1
    return r13, q13, phi, phi1, phi2, phi3


def combine2(c1, x1, c2, x2, out=None):
    """``out = c1*x1 + c2*x2`` with real weights and real or complex ``x``."""
    res = c1 * x1 + c2 * x2
    if out is None:
        return res
    out[...] = res
    return out


def combine4(c0, x0, c1, x1, c2, x2, c3, x3, out=None):
    res = c0 * x0 + c1 * x1 + c2 * x2 + c3 * x3
    if out is None:
        return res
    out[...] = res
    return out


def gray_scott(u, v, F, K, fu, fv):
    uvv = u * v * v
    fu[...] = -uvv + F * (1.0 - u)
    fv[...] = uvv - (F + K) * v


def schnakenberg(u, v, gamma, a, b, fu, fv):
    uuv = u * u * v
    fu[...] = gamma * (a - u + uuv)
    fv[...] = gamma * (b - uuv)


def fitzhugh_nagumo(u, v, mu, eps, beta, gamma, delta, fu, fv):
    fu[...] = u * (1.0 - u) * (u - mu) - v
    fv[...] = eps * (beta * u - gamma * v - delta)


def gierer_meinhardt(u, v, eps, mu, fu, fv):
    """Fill the GM reaction terms; return how many ``v`` entries are non-positive."""
    bad = int(np.count_nonzero(~(v > 0.0)))
    uu = u * u
    with np.errstate(divide="ignore", invalid="ignore"):
        fu[...] = uu / v - u
    fv[...] = uu / (eps * mu) - v / mu
    return bad
