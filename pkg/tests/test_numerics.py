import math

import numpy as np
import pytest

from lossywave.numerics import (
    NumericalError,
    bisect_root,
    complex_expm1,
    golden_section_max,
    integrate_decaying,
    scan_max,
    simpson_doubling,
)


def test_simpson_polynomial_exact():
    assert simpson_doubling(lambda x: x**2, 0.0, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-12)


def test_simpson_sine():
    assert simpson_doubling(np.sin, 0.0, np.pi) == pytest.approx(2.0, rel=1e-9)


def test_simpson_empty_interval():
    assert simpson_doubling(np.exp, 1.0, 1.0) == 0.0
    assert simpson_doubling(np.exp, 2.0, 1.0) == 0.0


def test_simpson_underflowed_integrand_returns_zero():
    assert simpson_doubling(lambda x: np.zeros_like(x), 0.0, 10.0) == 0.0


def test_simpson_nonconvergent_raises():
    # deterministic wideband noise: no panel count can settle to 1e-9
    def noisy(x):
        return np.sin(1e12 * x) ** 2

    with pytest.raises(NumericalError):
        simpson_doubling(noisy, 0.0, 1.0, rtol=1e-9, max_doublings=10)


def test_integrate_decaying_exponential():
    val = integrate_decaying(lambda x: np.exp(-x), 0.0, 80.0)
    assert val == pytest.approx(1.0, rel=1e-9)


def test_integrate_decaying_stretched_exponential():
    # integral of exp(-x**1.66) over [0, inf) = Gamma(1 + 1/1.66)
    val = integrate_decaying(lambda x: np.exp(-(x**1.66)), 0.0, 70.0 ** (1 / 1.66))
    assert val == pytest.approx(math.gamma(1.0 + 1.0 / 1.66), rel=1e-7)


def test_bisect_root_cosine():
    assert bisect_root(math.cos, 0.0, 2.0) == pytest.approx(math.pi / 2.0, rel=1e-12)


def test_bisect_root_endpoint():
    assert bisect_root(lambda x: x, 0.0, 1.0) == 0.0


def test_bisect_root_unbracketed():
    with pytest.raises(NumericalError):
        bisect_root(lambda x: 1.0 + x**2, 0.0, 1.0)


def test_bisect_solves_flat_spectrum_band_energy():
    # flat spectrum of amplitude A hard-cut at Omega: band energy 2*m*A**2,
    # so the band edge holding (1-delta) of the energy is exactly (1-delta)*Omega
    omega, amp, delta = 37.5, 0.25, 6e-4
    full = 2.0 * omega * amp**2

    def energy_gap(m):
        return 2.0 * m * amp**2 - (1.0 - delta) * full

    root = bisect_root(energy_gap, 0.0, omega, rtol=1e-15)
    assert root == pytest.approx((1.0 - delta) * omega, rel=1e-9)


def test_golden_section_max_parabola():
    x, fx = golden_section_max(lambda t: -((t - 1.3) ** 2), 0.0, 2.0)
    assert x == pytest.approx(1.3, abs=1e-9)
    assert fx == pytest.approx(0.0, abs=1e-12)


def test_scan_max_matches_known_peak():
    x, fx = scan_max(lambda t: np.exp(-((t - 4.0) ** 2)), 0.0, 10.0, n_grid=1001)
    assert x == pytest.approx(4.0, abs=1e-6)
    assert fx == pytest.approx(1.0, rel=1e-10)


def test_complex_expm1_small_argument():
    z = 1e-9 * np.exp(1j * 0.7)
    exact = z + z**2 / 2.0 + z**3 / 6.0
    assert abs(complex_expm1(z) - exact) <= 1e-12 * abs(exact)


def test_complex_expm1_moderate_argument():
    z = 0.3 - 1.2j
    assert complex_expm1(z) == pytest.approx(np.exp(z) - 1.0, rel=1e-14)
