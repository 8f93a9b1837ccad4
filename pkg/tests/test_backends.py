"""Agreement between the compiled kernels and the pure-Python fallback.

The sampling paths must agree bit for bit (identical libm call sequences on
integer-valued results); the series paths to a few ulps."""

import numpy as np
import pytest

from rosenthal import _kernels_py as kpy

kcy = pytest.importorskip("rosenthal._kernels",
                          reason="compiled kernels not built")


def test_backend_names():
    assert kpy.BACKEND_NAME == "python"
    assert kcy.BACKEND_NAME == "cython"


@pytest.mark.parametrize("p", [2.0, 4.0, 6.5, 22.311, 138.0, 700.0, 1e4, 1e6])
def test_centered_series_agreement(p):
    a = kcy.gen_bell_log(1.0, p, 1.0, 1e-13, 10**7)
    b = kpy.gen_bell_log(1.0, p, 1.0, 1e-13, 10**7)
    assert a[2] == b[2]
    assert a[0] == pytest.approx(b[0], rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("p", [2.0, 6.0, 22.311, 700.0, 1e4])
def test_symmetric_series_agreement(p):
    a = kcy.k_series_log(p, 0, 1e-13, 10**7)
    b = kpy.k_series_log(p, 0, 1e-13, 10**7)
    assert a[2] == b[2]
    assert a[0] == pytest.approx(b[0], rel=1e-12, abs=1e-12)


def test_weighted_series_agreement():
    for args in ((0.0, 2.5, 1.0), (1.0, 9.0, 1.0), (0.5, 6.0, 0.5),
                 (0.01, 4.0, 0.01)):
        a = kcy.gen_bell_log(*args, 1e-13, 10**7)
        b = kpy.gen_bell_log(*args, 1e-13, 10**7)
        assert a[0] == pytest.approx(b[0], rel=1e-12, abs=1e-12)


def test_derivative_series_agreement():
    for p, m in ((4.0, 1), (6.0, 2), (33.0, 1)):
        a = kcy.l_derivative_log(p, m, 1e-13, 10**7)
        b = kpy.l_derivative_log(p, m, 1e-13, 10**7)
        assert a[0] == pytest.approx(b[0], rel=1e-12, abs=1e-12)
        a = kcy.k_series_log(p, m, 1e-13, 10**7)
        b = kpy.k_series_log(p, m, 1e-13, 10**7)
        assert a[0] == pytest.approx(b[0], rel=1e-12, abs=1e-12)


def test_bessel_helpers_agree():
    for n in (0, 1, 30, 500, 3000):
        assert kcy.log_bessel_i1(n) == pytest.approx(kpy.log_bessel_i1(n),
                                                     rel=1e-14)
        assert kcy.bessel_corr(n) == kpy.bessel_corr(n)


def test_inversion_sampling_bit_identical():
    u = np.random.Generator(np.random.Philox(123)).random(50_000)
    a = np.empty(50_000, np.int64)
    b = np.empty(50_000, np.int64)
    kcy.poisson_inversion(1.0, u, a)
    kpy.poisson_inversion(1.0, u, b)
    assert np.array_equal(a, b)


def test_rejection_sampling_bit_identical():
    u = np.random.Generator(np.random.Philox(123)).random(100_000)
    a = np.empty(30_000, np.int64)
    b = np.empty(30_000, np.int64)
    ra = kcy.poisson_ptrs_fill(200.0, u, a, 0)
    rb = kpy.poisson_ptrs_fill(200.0, u, b, 0)
    assert ra == rb
    assert np.array_equal(a[:ra[0]], b[:rb[0]])
