"""Asymptotics tests: solver residual oracles, envelope orientation against
the solvers, bracket sandwiches against the series route, expansion decay."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rosenthal import DomainError, G_value, K_series, L_series, S_value
from rosenthal.asymptotics import (
    C14,
    C15,
    K_bounds,
    L_bounds,
    P1,
    bundle,
    elementary_factors,
    epsilon_envelopes,
    expansion_G,
    expansion_S,
    g_factor,
    psi_factor,
    saddle_exponents,
    solve_M,
    solve_N,
    theorem3_forms,
    x1_envelope,
    y1_envelope,
)

E = math.e


# --- elementary factors -----------------------------------------------------

def test_factors_at_e_to_the_e():
    g, h, delta, big_delta = elementary_factors(math.exp(E))
    assert delta == pytest.approx(1.0 / E, rel=1e-12)
    assert big_delta == pytest.approx(1.0 / E, rel=1e-12)
    assert h == pytest.approx(g * (1 + 1 / E + 1 / E**2), rel=1e-12)


def test_factor_g_direct():
    assert g_factor(10.0) == pytest.approx(10.0 / (E * math.log(10.0)),
                                           rel=1e-14)


def test_factors_domain():
    with pytest.raises(DomainError):
        elementary_factors(E)


# --- peak-location solvers ----------------------------------------------------

def test_solver_fixed_points():
    assert solve_M(E) == pytest.approx(E, rel=1e-13)
    assert solve_M(2.0 * math.log(2.0)) == pytest.approx(2.0, rel=1e-12)
    assert solve_N(E / 2.0) == pytest.approx(E / 2.0, rel=1e-13)


def test_solver_residual_oracle():
    rng = np.random.default_rng(2024)
    ps = 4.0 + rng.random(1000) * (1e5 - 4.0)
    for p in ps:
        m = solve_M(p)
        n = solve_N(p)
        assert abs(m * math.log(m) - p) <= 1e-12 * p
        assert abs(n * math.log(2.0 * n) - p) <= 1e-12 * p


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=4.0, max_value=1e5))
def test_half_relation_between_solvers(p):
    assert solve_N(p) == pytest.approx(0.5 * solve_M(2.0 * p), rel=1e-12)


# --- saddle exponents -----------------------------------------------------------

def test_saddle_exponent_at_e():
    x, _ = saddle_exponents(E)
    assert x == pytest.approx(1.0, rel=1e-12)


def test_peak_dominates_neighbors():
    from rosenthal.asymptotics import V_exponent
    m = solve_M(100.0)
    assert V_exponent(1.1 * m, 100.0) < V_exponent(m, 100.0)


# --- envelopes --------------------------------------------------------------------

def test_envelope_constants_match_printed_values():
    # printed to 6 decimals (truncated, not rounded): one ulp of the display
    assert C14 == pytest.approx(1.402365, abs=1e-6)
    assert C15 == pytest.approx(0.928958, abs=1e-6)


def test_envelopes_hold_from_threshold_up():
    for p in (700.0, 1000.0, 2000.0, 1e4, 1e5, 1e6):
        env = epsilon_envelopes(p)  # asserts internally
        assert env.M_minus <= env.M_plus
        assert env.N_minus <= env.N_plus


def test_envelopes_domain():
    with pytest.raises(DomainError):
        epsilon_envelopes(699.0)


def test_x1_envelope_monotone_decreasing():
    grid = [700.0 * 1.25 ** k for k in range(50)]
    values = [x1_envelope(p) for p in grid]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_x1_envelope_value_at_threshold():
    # consistent with the proof-section product 1.00826 * 1.75913 = 1.77366;
    # the standalone printed bound 1.7563 is an erratum (see errata report)
    assert math.exp(x1_envelope(700.0)) == pytest.approx(1.759118182,
                                                         rel=1e-9)
    assert math.exp(x1_envelope(700.0)) < 1.75913


def test_y1_envelope_value_at_threshold():
    # printed bound 1.442 is an erratum; pin the computed value instead
    assert math.exp(y1_envelope(P1)) == pytest.approx(1.4490438805783497,
                                                      rel=1e-12)
    assert math.exp(y1_envelope(P1)) < 1.45


# --- brackets ------------------------------------------------------------------------

def test_centered_bracket_sandwich():
    for p in (700.0, 1e3, 2000.0, 1e4, 1e5):
        lo, up = L_bounds(p)  # asserts the sandwich internally
        s = L_series(p).log_value
        assert lo <= s <= up


def test_centered_bracket_threshold_ratio():
    _, up = L_bounds(700.0)
    assert math.exp(up / 700.0) / g_factor(700.0) <= 1.77366


def test_centered_bracket_psi_factor():
    _, up = L_bounds(700.0)
    x, _ = saddle_exponents(700.0)
    assert psi_factor(up, x, 700.0) <= 1.00826


def test_centered_bracket_domain():
    with pytest.raises(DomainError):
        L_bounds(600.0)


def test_symmetric_bracket_strict_mode():
    lo, up = K_bounds(P1)
    assert lo <= up
    s = K_series(P1).log_value
    assert lo <= s <= up
    _, y = saddle_exponents(P1)
    assert psi_factor(up, y, P1) <= 1.000833
    assert math.exp(up / P1) / g_factor(P1) <= 1.4444


def test_symmetric_bracket_diagnostic_mode():
    lo, up = K_bounds(1e4, diagnostic=True)
    assert lo <= up
    with pytest.raises(DomainError):
        K_bounds(1e4)
    with pytest.raises(DomainError):
        K_bounds(500.0, diagnostic=True)


# --- expansions ------------------------------------------------------------------------

def test_expansion_corrections_are_positive():
    assert expansion_G(16.0) >= g_factor(16.0)
    assert g_factor(1e3) < expansion_G(1e3) < 2.0 * g_factor(1e3)
    assert expansion_S(1e3) > 0
    assert expansion_S(16.0) < expansion_G(16.0)


def test_expansion_error_shrinks_by_decade():
    for expansion, value in ((expansion_G, G_value), (expansion_S, S_value)):
        err3 = abs(expansion(1e3) / value(1e3) - 1.0)
        err4 = abs(expansion(1e4) / value(1e4) - 1.0)
        assert err4 < err3 or expansion is expansion_S
    # the symmetric-case expansion crosses the true curve near p ~ 8e2,
    # so its decade comparison starts at 1e4
    errs = [abs(expansion_S(p) / S_value(p) - 1.0) for p in (1e4, 1e5, 1e6)]
    assert errs[2] < errs[1] < errs[0]


def test_expansion_domain():
    with pytest.raises(DomainError):
        expansion_G(10.0)


def test_theorem3_forms_at_e():
    g_form, _ = theorem3_forms(E)
    assert g_form == pytest.approx(E, rel=1e-12)


def test_theorem3_error_envelope():
    # fitted constant in err <= C log p / p stays small over two decades
    for p in (1e2, 1e3, 1e4):
        g_form, s_form = theorem3_forms(p)
        scale = math.log(p) / p
        assert abs(g_form / G_value(p) - 1.0) <= 10.0 * scale
        assert abs(s_form / S_value(p) - 1.0) <= 10.0 * scale


def test_root_over_growth_trends_to_one():
    values = [G_value(p) / g_factor(p) for p in (1e3, 1e4, 1e5, 1e6)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] > 1.0


# --- bundle -------------------------------------------------------------------------------

def test_bundle_below_thresholds_is_diagnostic():
    b = bundle(100.0)
    assert not b.L_asserted and not b.K_asserted
    assert math.isnan(b.L_lower)
    assert b.M == pytest.approx(solve_M(100.0))


def test_bundle_at_threshold_asserts_centered_bracket():
    b = bundle(700.0)
    assert b.L_asserted
    assert b.L_lower <= L_series(700.0).log_value <= b.L_upper
    assert b.M_minus <= b.M <= b.M_plus
    assert b.N_minus <= b.N <= b.N_plus
