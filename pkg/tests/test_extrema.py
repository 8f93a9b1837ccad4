"""Extremum-search tests: synthetic functions with known maxima, certified
brackets, determinism, and the full extremal-constant reproduction."""

import pytest

from rosenthal import DomainError
from rosenthal.asymptotics import g_factor
from rosenthal.extrema import (
    COARSE_STEP,
    infimum_check,
    maximize_ratio,
    ratio_log_derivative_bound,
    reproduce_theorem1,
    _ratio_G_over_g,
)


@pytest.fixture(scope="module")
def theorem1():
    return reproduce_theorem1()


# --- synthetic searches -------------------------------------------------

def test_constant_function():
    rep = maximize_ratio(lambda p: 1.0, 4.0, 10.0, tol=1e-3)
    assert rep.max_value == 1.0
    assert 4.0 <= rep.argmax <= 10.0


def test_quadratic_peak_location():
    rep = maximize_ratio(lambda p: -(p - 17.3) ** 2, 4.0, 50.0, tol=1e-4)
    assert rep.argmax == pytest.approx(17.3, abs=1e-3)
    assert rep.bracket_halfwidth <= 1e-3


def test_even_grid_search():
    rep = maximize_ratio(lambda p: -(p - 33.0) ** 2, 4.0, 50.0,
                         even_only=True)
    assert rep.argmax in (32.0, 34.0)
    assert rep.restricted_to_even
    assert rep.grid_step_used == 2.0


def test_even_grid_tie_breaks_to_smaller():
    rep = maximize_ratio(lambda p: 0.0, 4.0, 10.0, even_only=True)
    assert rep.argmax == 4.0


def test_domain_errors():
    with pytest.raises(DomainError):
        maximize_ratio(lambda p: 1.0, 5.0, 5.0)
    with pytest.raises(DomainError):
        maximize_ratio(lambda p: 1.0, 4.1, 5.9, even_only=True)


def test_determinism():
    a = maximize_ratio(_ratio_G_over_g, 4.0, 100.0, tol=1e-3)
    b = maximize_ratio(_ratio_G_over_g, 4.0, 100.0, tol=1e-3)
    assert a == b


def test_certified_bracket():
    rep = maximize_ratio(_ratio_G_over_g, 4.0, 700.0, tol=1e-3)
    hw = rep.bracket_halfwidth
    assert _ratio_G_over_g(rep.argmax - hw) <= rep.max_value + 1e-12
    assert _ratio_G_over_g(rep.argmax + hw) <= rep.max_value + 1e-12


def test_grid_resolution_soundness():
    # a peak hiding between coarse nodes could exceed the seen maximum by at
    # most step * bound; that must be well below the peak prominence
    rep = maximize_ratio(_ratio_G_over_g, 4.0, 700.0, tol=1e-3)
    bound = ratio_log_derivative_bound(rep.argmax) * rep.max_value
    prominence = rep.max_value - _ratio_G_over_g(4.0)
    assert COARSE_STEP * bound < prominence


# --- infimum ---------------------------------------------------------------

def test_infimum_constant():
    m, trend = infimum_check(lambda p: 1.0, [4.0, 10.0, 1e4, 1e5])
    assert m == 1.0 and trend


def test_infimum_of_centered_ratio(theorem1):
    grid = [4.0 + 0.25 * k for k in range(int((700 - 4) / 0.25) + 1)]
    m, _ = infimum_check(_ratio_G_over_g, grid)
    assert m == pytest.approx(1.332, abs=1e-3)


def test_infimum_tail_trend():
    m, trend = infimum_check(_ratio_G_over_g, [1e3, 1e4, 1e5])
    assert trend


def test_infimum_requires_sorted_grid():
    with pytest.raises(DomainError):
        infimum_check(lambda p: 1.0, [4.0, 3.0])


# --- the reproduction -------------------------------------------------------

def test_centered_over_g(theorem1):
    e = theorem1.entry("C3")
    assert abs(e.deviation) <= 5e-6
    assert e.argmax == pytest.approx(33.4610, abs=0.05)
    assert not e.report.boundary_hit


def test_centered_over_g_even(theorem1):
    e = theorem1.entry("C5")
    assert e.argmax == 34.0
    assert abs(e.deviation) <= 5e-6


def test_centered_over_h(theorem1):
    e = theorem1.entry("C7")
    assert abs(e.deviation) <= 1e-3
    assert e.argmax == pytest.approx(71.430, abs=0.5)
    assert not e.report.below_ee_flag


def test_symmetric_over_g(theorem1):
    e = theorem1.entry("C9")
    assert abs(e.deviation) <= 1e-4
    assert e.argmax == pytest.approx(22.311, abs=0.05)


def test_symmetric_over_h(theorem1):
    e = theorem1.entry("C11")
    assert abs(e.deviation) <= 1e-4
    assert e.argmax == pytest.approx(138.149, abs=0.5)


def test_even_h_restricted(theorem1):
    e = theorem1.entry("C_even_h")
    assert e.argmax == 72.0
    assert abs(e.deviation) <= 1e-3


def test_truncated_sweep_is_justified(theorem1):
    # the envelope at the cut stays below the interior maximum of S/g
    assert theorem1.sg_envelope_at_cut < theorem1.entry("C9").computed
    # and the cut value itself is far below it too
    from rosenthal.constants import S_value
    assert S_value(theorem1.sg_cut) / g_factor(theorem1.sg_cut) \
        < theorem1.entry("C9").computed
