from fractions import Fraction

import numpy as np
import pytest

from fracrd.etd import scalar_step
from fracrd.stability import (amplification_coeffs, amplification_factor, region_count,
                              rk4_real_boundary, stability_boundary)


def c1_printed(y):
    """c1 with the numerator exactly as typeset (no y^2 term)."""
    y = Fraction(y)
    num = (169869312 - 148635648 * y - 9621504 * y**3 + 470016 * y**4 + 165888 * y**5
           - 46464 * y**6 + 6240 * y**7 - 600 * y**8 + 32 * y**9 - y**10)
    d1 = 24 - 18 * y + 6 * y**2 - y**3
    d2 = 192 - 72 * y + 12 * y**2 - y**3
    return num / (d2**3 * d1)


def test_y_zero_is_rk4():
    c = amplification_coeffs(0.0)
    assert (c.c0, c.c1, c.c2) == (1.0, 1.0, 0.5)
    assert abs(c.c3 - 1 / 6) < 1e-14 and abs(c.c4 - 1 / 24) < 1e-14
    assert Fraction(169869312, 192**3 * 24) == 1


def test_c0_hand_value():
    assert amplification_coeffs(-1.0).c0 == pytest.approx(18 / 49, rel=1e-15)


def test_c0_vanishes_at_minus_infinity():
    assert abs(amplification_coeffs(-1e6).c0) < 1e-10


def test_positive_y_rejected():
    with pytest.raises(ValueError):
        amplification_coeffs(0.5)


def test_printed_c1_misses_y_squared_term():
    # the scheme's own one-step factor needs +55738368 y^2 in the c1 numerator
    y = -1.0
    c = amplification_coeffs(y)
    eps = 1e-6
    slope = (scalar_step(-y, 1.0, lambda u, t: eps * u, 1.0) - scalar_step(-y, 1.0, lambda u, t: 0 * u, 1.0)) / eps
    assert c.c1 == pytest.approx(slope, rel=1e-6)
    assert abs(float(c1_printed(y)) - c.c1) > 1e-3
    assert float(c1_printed(0)) == 1.0


def test_amplification_at_origin():
    for y in (0, -1, -7.5):
        assert amplification_factor(0, y) == amplification_coeffs(y).c0


def test_rk4_polynomial(rng):
    x = rng.uniform(-4, 2, 100) + 1j * rng.uniform(-3, 3, 100)
    ref = 1 + x + x**2 / 2 + x**3 / 6 + x**4 / 24
    assert np.max(np.abs(amplification_factor(x, 0.0) - ref)) <= 1e-12


def test_rk4_real_boundary():
    xb = rk4_real_boundary()
    assert xb == pytest.approx(-2.785293563, abs=1e-9)
    assert abs(abs(amplification_factor(xb, 0.0)) - 1) < 1e-6


def test_matches_scalar_step_on_grid():
    worst = 0.0
    for y in np.linspace(-40, 0, 20):
        for x in np.linspace(-6, 3, 20):
            for xi in (0.0, 1.3):
                xx = complex(x, xi)
                r = scalar_step(-y, 1.0, lambda u, t: xx * u, 1.0 + 0j)
                worst = max(worst, abs(r - amplification_factor(xx, y)) / max(1.0, abs(r)))
    assert worst <= 1e-12


@pytest.mark.parametrize("y", [0.0, -5.0, -10.0, -20.0, -40.0])
def test_boundary_roots_lie_on_unit_circle(y):
    c = stability_boundary(y, 128)
    assert c.roots.shape == (128, 4)
    assert c.unconverged == ()
    assert c.max_residual() < 1e-9


def test_boundary_y0_crosses_rk4_point():
    c = stability_boundary(0.0, 64)
    assert np.min(np.abs(c.roots[0] - rk4_real_boundary())) < 1e-10


def test_conjugate_symmetry():
    n = 128
    c = stability_boundary(-10.0, n)
    for j in range(1, n):
        a = c.roots[j]
        b = np.conj(c.roots[n - j])
        d = np.abs(a[:, None] - b[None, :])
        assert np.max(np.min(d, axis=1)) < 1e-9
        assert np.max(np.min(d, axis=0)) < 1e-9


def test_branches_are_continuous():
    c = stability_boundary(-5.0, 512)
    jumps = np.abs(np.diff(c.roots, axis=0))
    assert np.max(jumps) < 0.5


def test_ntheta_minimum():
    with pytest.raises(ValueError):
        stability_boundary(0.0, 63)


def test_region_grows_as_y_decreases():
    counts = [region_count(y) for y in (0.0, -5.0, -10.0, -20.0)]
    assert all(a < b for a, b in zip(counts, counts[1:]))


def test_bounding_box_grows():
    widths = []
    for y in (0.0, -5.0, -10.0, -20.0, -40.0):
        pts = stability_boundary(y, 128).points()
        widths.append(np.ptp(pts.real) * np.ptp(pts.imag))
    assert all(a < b for a, b in zip(widths, widths[1:]))
