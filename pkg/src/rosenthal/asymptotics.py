"""Saddle-point asymptotics: elementary factors, the peak-location solvers,
the saddle exponents, envelope functions, and the explicit upper/lower
brackets for the constants at large exponents.

Everything here is elementary-function arithmetic on top of two scalar
root-finders; the series evaluators are used only to *verify* the brackets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from rosenthal.constants import K_series, L_series
from rosenthal.errors import DomainError, InconsistencyError

E = math.e
#: Threshold above which the centered-case bracket is asserted.
P0 = 700.0
#: Threshold above which the symmetric-case bracket is asserted.
P1 = 1.0e6
#: Diagnostic floor for the symmetric-case bracket formulas.
P1_DIAGNOSTIC = 1.0e3


def g_factor(p: float) -> float:
    """Leading growth factor p/(e log p)."""
    if p <= 1.0:
        raise DomainError(f"g requires p > 1, got {p}")
    return p / (E * math.log(p))


def elementary_factors(p: float) -> tuple[float, float, float, float]:
    """(g, h, delta, Delta): the leading factor, its two-term refinement,
    and the slow ratios 1/log p and log log p / log p."""
    if p <= E:
        raise DomainError(f"elementary factors need p > e, got {p}")
    lp = math.log(p)
    delta = 1.0 / lp
    big_delta = math.log(lp) / lp
    g = p / (E * lp)
    h = g * (1.0 + big_delta + big_delta * big_delta)
    return g, h, delta, big_delta


def _newton_root(func, dfunc, x0: float, lo: float, hi: float,
                 rel_res: float) -> float:
    """Safeguarded Newton: steps that leave [lo, hi] fall back to bisection.
    func must be increasing on the bracket with func(lo) <= 0 <= func(hi)."""
    x = min(max(x0, lo), hi)
    for _ in range(200):
        f = func(x)
        if abs(f) <= rel_res:
            return x
        if f > 0.0:
            hi = x
        else:
            lo = x
        d = dfunc(x)
        x_new = x - f / d if d > 0.0 else lo
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        x = x_new
    return x


def solve_M(p: float) -> float:
    """Unique root >= 1 of x log x = p, residual below 1e-12 * p."""
    if p <= 0.0:
        raise DomainError(f"solve_M requires p > 0, got {p}")
    hi = max(E, p)
    return _newton_root(lambda x: x * math.log(x) - p,
                        lambda x: math.log(x) + 1.0,
                        p / max(math.log(p), 1.0), 1.0, hi, 1e-13 * p)


def solve_N(p: float) -> float:
    """Unique root >= 1/2 of x log(2x) = p, residual below 1e-12 * p."""
    if p <= 0.0:
        raise DomainError(f"solve_N requires p > 0, got {p}")
    hi = max(E, p)
    return _newton_root(lambda x: x * math.log(2.0 * x) - p,
                        lambda x: math.log(2.0 * x) + 1.0,
                        p / max(math.log(2.0 * p), 1.0), 0.5, hi, 1e-13 * p)


def V_exponent(x: float, p: float) -> float:
    """Saddle integrand exponent for the centered case."""
    return p * math.log(x) - x * math.log(x) + x


def W_exponent(x: float, p: float) -> float:
    """Saddle integrand exponent for the symmetric case."""
    return p * math.log(x) - x * math.log(x) + x * (1.0 - math.log(2.0))


def saddle_exponents(p: float) -> tuple[float, float]:
    """(X, Y) = (V(M,p)/p, W(N,p)/p); verifies that the solver points really
    dominate by sampling the exponents away from them."""
    if p <= 0:
        raise DomainError("saddle_exponents requires p > 0")
    m = solve_M(p)
    n = solve_N(p)
    x = V_exponent(m, p) / p
    y = W_exponent(n, p) / p
    for probe in (0.5 * m, 2.0 * m):
        if V_exponent(probe, p) / p > x + 1e-12:
            raise InconsistencyError("M(p) is not the maximizer of V")
    for probe in (0.5 * n, 2.0 * n):
        if W_exponent(probe, p) / p > y + 1e-12:
            raise InconsistencyError("N(p) is not the maximizer of W")
    return x, y


def _delta(p: float) -> float:
    return 1.0 / math.log(p)


def _big_delta(p: float) -> float:
    return math.log(math.log(p)) / math.log(p)


#: Envelope constants, fixed at the threshold P0.  The printed closed forms
#: in the source material evaluate to different numbers; the reciprocal
#: forms below reproduce the printed numeric values (~1.402365, ~0.928958)
#: and give a valid upper envelope, so they are what is implemented.
C14 = 1.0 / (1.0 - _big_delta(P0))
C15 = 2.0 / (math.sqrt(1.0 + 4.0 * _big_delta(P0) ** 2) + 1.0)


def eps_plus(p: float) -> float:
    """Upper envelope of the relative peak offset eps(p) = M(p) log(p)/p - 1.

    Rigorous: eps <= Delta/(1-Delta) = Delta + Delta^2/(1-Delta) pointwise,
    and 1/(1-Delta(p)) <= C14 for p >= P0 since Delta decreases there.
    """
    d = _big_delta(p)
    return d + C14 * d * d


def eps_minus(p: float) -> float:
    """Lower envelope of eps(p): Delta + C15 * (Delta^2 - delta*Delta).

    The plain Delta + C15*Delta^2 form overshoots the true offset at every
    practical p (the leading correction to eps is Delta^2 - delta*Delta);
    bracketing that combination with C15 is what actually stays below the
    solver value, with its tightest margin exactly at P0.
    """
    d = _big_delta(p)
    return d + C15 * (d * d - _delta(p) * d)


@dataclass(frozen=True)
class EpsilonEnvelopes:
    eps_plus: float
    eps_minus: float
    M_plus: float
    M_minus: float
    N_plus: float
    N_minus: float


def epsilon_envelopes(p: float) -> EpsilonEnvelopes:
    """Two-sided envelopes for the peak locations M(p) and N(p), asserted
    against the solvers.  Valid from P0 up."""
    if p < P0:
        raise DomainError(f"epsilon envelopes need p >= {P0:g}, got {p}")
    ep, em = eps_plus(p), eps_minus(p)
    base_m = p / math.log(p)
    base_n = p / math.log(2.0 * p)
    env = EpsilonEnvelopes(
        eps_plus=ep,
        eps_minus=em,
        M_plus=base_m * (1.0 + ep),
        M_minus=base_m * (1.0 + em),
        N_plus=base_n * (1.0 + eps_plus(2.0 * p)),
        N_minus=base_n * (1.0 + eps_minus(2.0 * p)),
    )
    m = solve_M(p)
    n = solve_N(p)
    if not env.M_minus <= m <= env.M_plus:
        raise InconsistencyError(
            f"M envelope violated at p={p}: {env.M_minus} <= {m} <= {env.M_plus}")
    if not env.N_minus <= n <= env.N_plus:
        raise InconsistencyError(
            f"N envelope violated at p={p}: {env.N_minus} <= {n} <= {env.N_plus}")
    return env


def x1_envelope(p: float) -> float:
    """Upper envelope of the correction X(p) - log g(p)."""
    d, big_d = _delta(p), _big_delta(p)
    ep = eps_plus(p)
    return big_d + d + big_d * ep + d * (ep - math.log1p(ep))


def x2_envelope(p: float) -> float:
    """Lower envelope of the correction X(p) - log g(p)."""
    d, big_d = _delta(p), _big_delta(p)
    em = eps_minus(p)
    return big_d + d + (math.log1p(em) - em) - d * em * math.log1p(em)


def y1_envelope(p: float) -> float:
    """Upper envelope of the correction Y(p) - log g(p)."""
    d, big_d = _delta(2.0 * p), _big_delta(2.0 * p)
    ep = eps_plus(2.0 * p)
    dl2 = _delta(p) * math.log(2.0)
    return big_d + d + (1.0 + ep) * dl2 / (1.0 + dl2) + ep * (big_d + d)


def y2_envelope(p: float) -> float:
    """Lower envelope of the correction Y(p) - log g(p)."""
    d, big_d = _delta(2.0 * p), _big_delta(2.0 * p)
    em = eps_minus(2.0 * p)
    return big_d + d + em * (big_d + d)


def _l_bound_formulas(p: float) -> tuple[float, float]:
    """Raw bracket formulas for log L(p); no assertion."""
    x, _ = saddle_exponents(p)
    ep = eps_plus(p)
    lp = math.log(p)
    psi1 = math.sqrt(2.0 * math.pi * p) * (1.0 + ep) / lp
    psi2 = (math.exp(-lp * lp / (1.0 + ep) ** 2)
            * p * (1.0 + ep) ** 2 / (lp * lp))
    inv_sqrt_2pi = 1.0 / math.sqrt(2.0 * math.pi)
    bracket = (1.5 * math.exp(-p * x) + inv_sqrt_2pi
               + psi1 + 2.0 * inv_sqrt_2pi * psi2)
    log_upper = p * x + math.log(bracket) - 1.0

    q = p - 0.5
    mq = solve_M(q)
    xq = V_exponent(mq, q) / q
    m_minus = (q / math.log(q)) * (1.0 + eps_minus(q))
    if m_minus > mq:
        raise InconsistencyError("lower envelope crossed the peak location")
    # Sonin bound: m^p/(m+1)! >= (2pi)^{-1/2} e^{-1/12} exp(V(m,q)) / (m+1);
    # the extra 1/(m+1) is bounded on the window by 1/(M+sqrt(q)+1).
    # Curvature of V on [M, M+sqrt(q)] is at most q/M_-^2 + 1/M_-, and the
    # terms decrease right of M, so the integer sum over the window majorizes
    # the integral over [M+1, M+sqrt(q)].
    kappa = q / (m_minus * m_minus) + 1.0 / m_minus
    window = 0.5 / math.sqrt(kappa) * (
        math.erf(math.sqrt(0.5 * kappa * q)) - math.erf(math.sqrt(0.5 * kappa)))
    log_lower = (q * xq - 1.0 - 1.0 / 12.0 + math.log(window)
                 - math.log(mq + math.sqrt(q) + 1.0))
    return log_lower, log_upper


def L_bounds(p: float) -> tuple[float, float]:
    """Two-sided bracket for log L(p), asserted against the series route.

    The upper side is the three-part integral split around the peak plus the
    boundary terms; the lower side is the Sonin-corrected half-Gaussian mass
    over [M(q), M(q)+sqrt(q)] at q = p - 1/2.
    """
    if p < P0:
        raise DomainError(f"L_bounds needs p >= {P0:g}, got {p}")
    log_lower, log_upper = _l_bound_formulas(p)
    series = L_series(p).log_value
    if not log_lower - 1e-9 <= series <= log_upper + 1e-9:
        raise InconsistencyError(
            f"L bracket violated at p={p}: {log_lower} <= {series} <= {log_upper}")
    return log_lower, log_upper


def _k_bound_formulas(p: float) -> tuple[float, float]:
    """Raw bracket formulas for log K(p); no assertion."""
    _, y = saddle_exponents(p)
    ep2 = eps_plus(2.0 * p)
    lp = math.log(p)
    i6 = math.sqrt(2.0 * math.pi * p) * (1.0 + ep2) / math.log(2.0 * p)
    i7 = (p / (lp * lp) * (1.0 + ep2) ** 2
          * math.exp(-0.5 * lp * lp / (1.0 + ep2) ** 2))
    log_upper = (p * y + math.log(2.0) - 0.75
                 - 0.5 * math.log(2.0 * math.pi)
                 + math.log1p(i6 + 2.0 * i7))

    q = p - 0.5
    nq = solve_N(q)
    yq = W_exponent(nq, q) / q
    n_minus = (q / math.log(2.0 * q)) * (1.0 + eps_minus(2.0 * q))
    if n_minus > nq:
        raise InconsistencyError("lower envelope crossed the peak location")
    # Here the summand is exactly b_2(n, p), no index shift; only the
    # sum-vs-integral window [N+1, N+sqrt(q)] correction applies.
    kappa = q / (n_minus * n_minus) + 1.0 / n_minus
    window = 0.5 / math.sqrt(kappa) * (
        math.erf(math.sqrt(0.5 * kappa * q)) - math.erf(math.sqrt(0.5 * kappa)))
    log_lower = (q * yq + math.log(2.0) - 1.0 - 1.0 / 12.0
                 + math.log(window))
    return log_lower, log_upper


def K_bounds(p: float, diagnostic: bool = False) -> tuple[float, float]:
    """Two-sided bracket for log K(p).

    Strict mode (p >= P1) asserts the bracket against the series route;
    diagnostic mode evaluates the same formulas from p >= 1e3 without the
    assertion (no validity claim is made below P1).
    """
    if p < P1 and not diagnostic:
        raise DomainError(
            f"K_bounds needs p >= {P1:g} (or diagnostic=True), got {p}")
    if p < P1_DIAGNOSTIC:
        raise DomainError(
            f"K_bounds diagnostic mode needs p >= {P1_DIAGNOSTIC:g}, got {p}")
    log_lower, log_upper = _k_bound_formulas(p)
    if p >= P1:
        series = K_series(p).log_value
        if not log_lower - 1e-9 <= series <= log_upper + 1e-9:
            raise InconsistencyError(
                f"K bracket violated at p={p}: "
                f"{log_lower} <= {series} <= {log_upper}")
    return log_lower, log_upper


def psi_factor(log_bound: float, saddle_log: float, p: float) -> float:
    """p-th root of bound/exp(p * saddle exponent): the per-unit factor the
    brackets attach to the pure saddle growth.  (The bracket statements only
    define these implicitly; this is the explicit extraction.)"""
    return math.exp((log_bound - p * saddle_log) / p)


def expansion_G(p: float) -> float:
    """Displayed large-p expansion of the centered-case root G(p):
    g(p) * (1 + Delta + delta + Delta^2 + Delta*delta), remainder dropped."""
    if p < 16.0:
        raise DomainError(f"expansion_G needs p >= 16, got {p}")
    g, _, d, big_d = elementary_factors(p)
    return g * (1.0 + big_d + d + big_d * big_d + big_d * d)


def expansion_S(p: float) -> float:
    """Displayed large-p expansion of the symmetric-case root S(p):
    g(p) * (1 + Delta + (1-log 2)*delta + Delta^2), remainder dropped."""
    if p < 16.0:
        raise DomainError(f"expansion_S needs p >= 16, got {p}")
    g, _, d, big_d = elementary_factors(p)
    return g * (1.0 + big_d + (1.0 - math.log(2.0)) * d + big_d * big_d)


def theorem3_forms(p: float) -> tuple[float, float]:
    """Leading saddle forms (G_form, S_form) = (exp(X(p)), exp(Y(p))) written
    through the peak locations: M^{1-M/p} e^{M/p} and N (e/2N)^{N/p}."""
    if p < E:
        raise DomainError(f"theorem3_forms needs p >= e, got {p}")
    m = solve_M(p)
    n = solve_N(p)
    g_form = m ** (1.0 - m / p) * math.exp(m / p)
    s_form = n * (E / (2.0 * n)) ** (n / p)
    return g_form, s_form


@dataclass(frozen=True)
class AsymptoticBundle:
    """Everything the bound inspector reports for one exponent."""

    p: float
    g: float
    h: float
    delta: float
    Delta: float
    M: float
    N: float
    X: float
    Y: float
    eps: float
    eps_plus: float
    eps_minus: float
    M_plus: float
    M_minus: float
    N_plus: float
    N_minus: float
    L_lower: float
    L_upper: float
    K_lower: float
    K_upper: float
    L_asserted: bool
    K_asserted: bool


def bundle(p: float) -> AsymptoticBundle:
    """Assemble the full record; brackets are asserted only above their
    thresholds, below they are reported as-is (diagnostic)."""
    g, h, d, big_d = elementary_factors(p)
    m = solve_M(p)
    n = solve_N(p)
    x, y = saddle_exponents(p)
    base_m = p / math.log(p)
    base_n = p / math.log(2.0 * p)
    l_asserted = p >= P0
    k_asserted = p >= P1
    # Below the thresholds the envelope formulas may be invalid (the lower
    # envelope can cross the peak); report NaN instead of failing there.
    if l_asserted:
        l_lo, l_up = L_bounds(p)
    else:
        try:
            l_lo, l_up = _l_bound_formulas(p)
        except InconsistencyError:
            l_lo, l_up = math.nan, math.nan
    if p >= P1_DIAGNOSTIC:
        try:
            k_lo, k_up = K_bounds(p, diagnostic=True)
        except InconsistencyError:
            k_lo, k_up = math.nan, math.nan
    else:
        k_lo, k_up = math.nan, math.nan
    return AsymptoticBundle(
        p=p, g=g, h=h, delta=d, Delta=big_d, M=m, N=n, X=x, Y=y,
        eps=m / base_m - 1.0,
        eps_plus=eps_plus(p), eps_minus=eps_minus(p),
        M_plus=base_m * (1.0 + eps_plus(p)),
        M_minus=base_m * (1.0 + eps_minus(p)),
        N_plus=base_n * (1.0 + eps_plus(2.0 * p)),
        N_minus=base_n * (1.0 + eps_minus(2.0 * p)),
        L_lower=l_lo, L_upper=l_up, K_lower=k_lo, K_upper=k_up,
        L_asserted=l_asserted, K_asserted=k_asserted,
    )
