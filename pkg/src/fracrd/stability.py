"""Linear stability of ETDRK4-P13 on the test equation ``u' + c u = gamma u``.

With ``y = -c tau`` and ``x = gamma tau`` one step multiplies ``u`` by the quartic
``r(x, y) = c0 + c1 x + c2 x^2 + c3 x^3 + c4 x^4``. For fixed real ``y <= 0`` the
stability region is ``{x : |r(x, y)| <= 1}``; its boundary is traced by
solving ``r(x, y) = exp(i theta)`` for ``x``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "AmplificationCoeffs",
    "StabilityCurve",
    "amplification_coeffs",
    "amplification_factor",
    "stability_boundary",
    "region_count",
    "region_area",
    "rk4_real_boundary",
]

RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class AmplificationCoeffs:
    y: float
    c0: float
    c1: float
    c2: float
    c3: float
    c4: float

    @property
    def poly(self) -> np.ndarray:
        """Coefficients highest degree first, as ``np.polyval`` / ``np.roots`` expect."""
        return np.array([self.c4, self.c3, self.c2, self.c1, self.c0])


def amplification_coeffs(y: float) -> AmplificationCoeffs:
    """Coefficients of ``r(x, y)`` for ``y <= 0``.

    The ``y^2`` term of the ``c1`` numerator (``+55738368 y^2``) is missing in
    print; it is restored here, otherwise ``r`` would not match one step of
    the scheme.
    """
    y = float(y)
    if not y <= 0:
        raise ValueError(f"y must be <= 0 (y = -c*tau with c >= 0), got {y}")
    d1 = 24 - 18 * y + 6 * y**2 - y**3
    d2 = 192 - 72 * y + 12 * y**2 - y**3
    q = 96 - 12 * y + y**2
    c0 = 6 * (4 + y) / d1
    n1 = np.polyval([-1, 32, -600, 6240, -46464, 165888, 470016, -9621504,
                     55738368, -148635648, 169869312], y)
    c1 = n1 / (d2**3 * d1)
    n2 = np.polyval([1, -25, 404, -2976, 11712, 34560, -221184, 442368], y)
    c2 = n2 / (d2**2 * d1)
    c3 = 2 * q**2 * (1536 - 960 * y + 240 * y**2 + 8 * y**3 + y**4) / (d2**3 * d1)
    c4 = 2 * q**3 * (4 - 3 * y + y**2) / (d2**3 * d1)
    return AmplificationCoeffs(y, float(c0), float(c1), float(c2), float(c3), float(c4))


def amplification_factor(x, y: float):
    """``r(x, y)``; ``x`` may be a complex scalar or array."""
    return np.polyval(amplification_coeffs(y).poly, x)


@dataclass(frozen=True)
class StabilityCurve:
    """Boundary points of the stability region for one ``y``.

    ``roots[j, k]`` is the ``k``-th branch at ``theta[j]``; branches are ordered
    so that each column varies continuously with ``theta``. ``unconverged``
    lists sample indices whose polished residual exceeded the tolerance.
    """

    y: float
    theta: np.ndarray
    roots: np.ndarray
    unconverged: tuple[int, ...] = field(default=())

    @property
    def n_branches(self) -> int:
        return self.roots.shape[1]

    def points(self) -> np.ndarray:
        return self.roots.ravel()

    def max_residual(self) -> float:
        """Largest ``| |r(x, y)| - 1 |`` over all stored roots."""
        return float(np.max(np.abs(np.abs(amplification_factor(self.roots, self.y)) - 1.0)))


def _polish(poly, dpoly, x, target):
    f = np.polyval(poly, x) - target
    df = np.polyval(dpoly, x)
    ok = df != 0
    x = x.copy()
    x[ok] -= f[ok] / df[ok]
    return x


def _match(prev, cur):
    best, best_cost = None, np.inf
    for perm in itertools.permutations(range(len(cur))):
        cost = np.sum(np.abs(cur[list(perm)] - prev))
        if cost < best_cost:
            best, best_cost = perm, cost
    return cur[list(best)]


def stability_boundary(y: float, n_theta: int = 256) -> StabilityCurve:
    """Solve ``r(x, y) = exp(i theta_j)``, ``theta_j = 2 pi j / n_theta``, for all four roots.

    Roots come from the companion matrix (``np.roots``) followed by one Newton
    step, and are reordered sample to sample by nearest-neighbour matching.
    """
    if n_theta < 64:
        raise ValueError(f"n_theta must be >= 64, got {n_theta}")
    co = amplification_coeffs(y)
    poly = co.poly
    if poly[0] == 0:
        raise ValueError(f"leading coefficient vanishes at y={y}")
    dpoly = np.polyder(poly)
    theta = 2 * np.pi * np.arange(n_theta) / n_theta
    roots = np.empty((n_theta, 4), dtype=complex)
    bad = []
    for j, th in enumerate(theta):
        target = np.exp(1j * th)
        p = poly.astype(complex)
        p[-1] -= target
        x = _polish(poly, dpoly, np.roots(p), target)
        if j:
            x = _match(roots[j - 1], x)
        else:
            x = x[np.lexsort((x.imag, x.real))]
        roots[j] = x
        res = np.abs(np.polyval(poly, x) - target)
        if np.max(res) > RESIDUAL_TOL * max(1.0, float(np.max(np.abs(x)))):
            bad.append(j)
    return StabilityCurve(float(y), theta, roots, tuple(bad))


def region_count(y: float, box=(-100.0, 40.0, -80.0, 80.0), n=(701, 801)) -> int:
    """Number of lattice points of ``box = (re_min, re_max, im_min, im_max)`` with ``|r| <= 1``."""
    re = np.linspace(box[0], box[1], n[0])
    im = np.linspace(box[2], box[3], n[1])
    X = re[:, None] + 1j * im[None, :]
    return int(np.count_nonzero(np.abs(amplification_factor(X, y)) <= 1.0))


def region_area(y: float, box=(-100.0, 40.0, -80.0, 80.0), n=(701, 801)) -> float:
    """Sampled area of the stability region inside ``box``."""
    cell = (box[1] - box[0]) / (n[0] - 1) * (box[3] - box[2]) / (n[1] - 1)
    return region_count(y, box, n) * cell


def rk4_real_boundary(tol: float = 1e-14) -> float:
    """Left end of the classical RK4 stability interval on the real axis (about -2.7853)."""
    def g(x):
        return abs(1 + x + x * x / 2 + x**3 / 6 + x**4 / 24) - 1

    lo, hi = -3.0, -2.5
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
