"""Pure-Python fallback for the hot kernels.

Mirrors ``rosenthal._kernels`` (the compiled extension) operation for
operation, so both backends yield the same numbers; ``rosenthal._backend``
picks whichever is available at import time.

All series here have nonnegative terms that are unimodal in the summation
index, so every sum is accumulated in log scale starting at the peak index
and walking outward, with a geometric bound on the truncated tail.  Term
ratios past the peak are strictly below 1 and decreasing, which is what
makes the geometric bound rigorous.
"""

from __future__ import annotations

import math

BACKEND_NAME = "python"

_LOG2 = math.log(2.0)
# Upper bound of the Bessel correction series: sum_k 4^{-k}/k! = e^{1/4}.
_CORR_MAX = math.exp(0.25)


def bessel_corr(n: int) -> float:
    """Correction factor C(n) with I_n(1) = 2^{-n}/n! * C(n), C(n) in (1, e^{1/4}]."""
    total = 1.0
    term = 1.0
    k = 0
    while term > 1e-18 * total:
        k += 1
        term *= 0.25 / (k * (n + k))
        total += term
    return total


def log_bessel_i1(n: int) -> float:
    """log I_n(1); stays finite far past the underflow point of I_n(1) itself."""
    return -n * _LOG2 - math.lgamma(n + 1.0) + math.log(bessel_corr(n))


def _solve_peak(p: float, c: float) -> float:
    """Root of x*(log x + c) = p, locating the series peak; Newton, always converges
    here because the left side is convex and increasing for x > exp(-c-1)."""
    x = p / max(math.log(max(p, 4.0)) + c, 1.0)
    if x < 2.0:
        x = 2.0
    for _ in range(60):
        lx = math.log(x) + c
        f = x * lx - p
        fp = lx + 1.0
        if fp <= 0.0:
            x *= 2.0
            continue
        step = f / fp
        if step >= x:
            x *= 0.5
        else:
            x -= step
        if abs(step) < 1e-9 * x + 1e-12:
            break
    return x


def gen_bell_log(a: float, p: float, z: float, rel_tol: float, max_terms: int):
    """log of e^{-1} * sum_{n>=0} |n-a|^p z^n / n!   (0^0 := 1 when p == 0).

    Returns (log_value, rel_tail_bound, terms_used).
    """
    zl = math.log(z)

    if p == 0.0:
        # Plain exponential series; at z <= 1 terms decay from n=0 on.
        s = 1.0
        term = 1.0
        n = 0
        while True:
            n += 1
            term *= z / n
            s += term
            r = z / (n + 1)
            tail = term * r / (1.0 - r)
            if tail <= 0.25 * rel_tol * s or n >= max_terms:
                return math.log(s) - 1.0, tail / s, n + 1

    def log_term(n: int) -> float:
        d = abs(n - a)
        if d == 0.0:
            return -math.inf
        return p * math.log(d) + n * zl - math.lgamma(n + 1.0)

    low = 0
    n_peak = int(_solve_peak(p, -zl) + 0.5)
    if n_peak < low + 1:
        n_peak = low + 1
    while log_term(n_peak) == -math.inf:
        n_peak += 1
    while log_term(n_peak + 1) > log_term(n_peak):
        n_peak += 1
    while n_peak > low + 1 and log_term(n_peak - 1) > log_term(n_peak):
        n_peak -= 1

    m = log_term(n_peak)
    s = 1.0
    terms = 1

    # Upward sweep.  Ratio t(n+1)/t(n) is < 1 and decreasing past the peak,
    # so the remaining tail is bounded by a geometric series.
    tail_up = math.inf
    n = n_peak
    lt = m
    while True:
        n += 1
        lt_next = log_term(n)
        ts = math.exp(lt_next - m)
        s += ts
        terms += 1
        r = math.exp(log_term(n + 1) - lt_next)
        if r < 0.75:
            bound = ts * r / (1.0 - r)
            if bound <= 0.25 * rel_tol * s:
                tail_up = bound
                break
        if terms >= max_terms:
            tail_up = ts
            break
        lt = lt_next

    # Downward sweep with the mirrored geometric bound; near the dip at
    # n ~ a the ratio argument breaks down, so below a+2 we just sum to 0
    # (cheap: at most a handful of terms there).
    tail_down = 0.0
    n = n_peak
    while n > low:
        n -= 1
        lt_n = log_term(n)
        if lt_n == -math.inf:
            continue
        ts = math.exp(lt_n - m)
        s += ts
        terms += 1
        if n - 1 > a + 1.0:
            r = math.exp(log_term(n - 1) - lt_n)
            if r < 0.75:
                bound = ts * r / (1.0 - r)
                if bound <= 0.25 * rel_tol * s:
                    tail_down = bound
                    break

    log_value = m + math.log(s) - 1.0
    rel_tail = (tail_up + tail_down) / s
    return log_value, rel_tail, terms


def k_series_log(p: float, order: int, rel_tol: float, max_terms: int):
    """log of (2/e) * sum_{n>=1} n^p log^order(n) I_n(1).

    order = 0 gives the symmetric-case constant; order >= 1 its term-wise
    p-derivatives.  Returns (log_value, rel_tail_bound, terms_used).
    """

    def log_term(n: int) -> float:
        v = p * math.log(n) - n * _LOG2 - math.lgamma(n + 1.0) \
            + math.log(bessel_corr(n))
        if order > 0:
            if n == 1:
                return -math.inf
            v += order * math.log(math.log(n))
        return v

    n_peak = int(_solve_peak(p, _LOG2) + 0.5)
    if n_peak < 2:
        n_peak = 2
    while log_term(n_peak + 1) > log_term(n_peak):
        n_peak += 1
    while n_peak > 1 and log_term(n_peak - 1) > log_term(n_peak):
        n_peak -= 1
    if log_term(n_peak) == -math.inf:
        n_peak += 1

    m = log_term(n_peak)
    s = 1.0
    terms = 1

    tail_up = math.inf
    n = n_peak
    while True:
        n += 1
        ts = math.exp(log_term(n) - m)
        s += ts
        terms += 1
        # Correction-free ratio bound >= true ratio (the correction factor
        # decreases in n), itself decreasing in n.
        r = ((n + 1.0) / n) ** p / (2.0 * (n + 1.0))
        if order > 0:
            r *= (math.log(n + 1.0) / math.log(n)) ** order
        if r < 0.75:
            bound = ts * r / (1.0 - r)
            if bound <= 0.25 * rel_tol * s:
                tail_up = bound
                break
        if terms >= max_terms:
            tail_up = ts
            break

    tail_down = 0.0
    n = n_peak
    nmin = 1 if order == 0 else 2
    while n > nmin:
        n -= 1
        ts = math.exp(log_term(n) - m)
        s += ts
        terms += 1
        if n > nmin + 1:
            r = ((n - 1.0) / n) ** p * (2.0 * n) * _CORR_MAX
            if order > 0 and n - 1 > 1:
                r *= (math.log(n - 1.0) / math.log(n)) ** order
            if r < 0.75:
                bound = ts * r / (1.0 - r)
                if bound <= 0.25 * rel_tol * s:
                    tail_down = bound
                    break

    log_value = _LOG2 - 1.0 + m + math.log(s)
    rel_tail = (tail_up + tail_down) / s
    return log_value, rel_tail, terms


def l_derivative_log(p: float, order: int, rel_tol: float, max_terms: int):
    """log of e^{-1} * sum_{n>=3} (n-1)^p log^order(n-1) / n!.

    Term-wise derivative of the centered-case series; terms with n <= 2
    vanish because log 1 = 0.  Returns (log_value, rel_tail_bound, terms_used).
    """

    def log_term(n: int) -> float:
        return p * math.log(n - 1.0) + order * math.log(math.log(n - 1.0)) \
            - math.lgamma(n + 1.0)

    n_peak = int(_solve_peak(p, 0.0) + 1.5)
    if n_peak < 3:
        n_peak = 3
    while log_term(n_peak + 1) > log_term(n_peak):
        n_peak += 1
    while n_peak > 3 and log_term(n_peak - 1) > log_term(n_peak):
        n_peak -= 1

    m = log_term(n_peak)
    s = 1.0
    terms = 1

    tail_up = math.inf
    n = n_peak
    while True:
        n += 1
        lt_n = log_term(n)
        ts = math.exp(lt_n - m)
        s += ts
        terms += 1
        r = math.exp(log_term(n + 1) - lt_n)
        if r < 0.75:
            bound = ts * r / (1.0 - r)
            if bound <= 0.25 * rel_tol * s:
                tail_up = bound
                break
        if terms >= max_terms:
            tail_up = ts
            break

    tail_down = 0.0
    n = n_peak
    while n > 3:
        n -= 1
        lt_n = log_term(n)
        ts = math.exp(lt_n - m)
        s += ts
        terms += 1
        if n - 1 > 3:
            r = math.exp(log_term(n - 1) - lt_n)
            if r < 0.75:
                bound = ts * r / (1.0 - r)
                if bound <= 0.25 * rel_tol * s:
                    tail_down = bound
                    break

    log_value = m + math.log(s) - 1.0
    rel_tail = (tail_up + tail_down) / s
    return log_value, rel_tail, terms


def poisson_inversion(lam: float, u, out) -> None:
    """Poisson draws by CDF search, one uniform per draw.  Intended for
    lam <= 30 where the search stays short."""
    n = out.shape[0]
    q0 = math.exp(-lam)
    for i in range(n):
        ui = u[i]
        q = q0
        cdf = q
        k = 0
        while ui > cdf and k < 4000:
            k += 1
            q *= lam / k
            cdf += q
        out[i] = k


def poisson_ptrs_fill(lam: float, u, out, start: int):
    """Poisson draws by transformed rejection (PTRS), two uniforms per
    attempt.  Fills out[start:] from u until out is full or fewer than two
    uniforms remain; returns (next_fill_index, uniforms_consumed)."""
    b = 0.931 + 2.53 * math.sqrt(lam)
    a = -0.059 + 0.02483 * b
    inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
    v_r = 0.9277 - 3.6224 / (b - 2.0)
    log_lam = math.log(lam)

    n = out.shape[0]
    nu = u.shape[0]
    i = start
    j = 0
    while i < n and j + 2 <= nu:
        uu = u[j] - 0.5
        v = u[j + 1]
        j += 2
        us = 0.5 - abs(uu)
        if us <= 0.0:  # u exactly on the edge; reject the attempt
            continue
        k = math.floor((2.0 * a / us + b) * uu + lam + 0.43)
        if us >= 0.07 and v <= v_r:
            out[i] = k
            i += 1
            continue
        if k < 0 or (us < 0.013 and v > us):
            continue
        if math.log(v * inv_alpha / (a / (us * us) + b)) \
                <= k * log_lam - lam - math.lgamma(k + 1.0):
            out[i] = k
            i += 1
    return i, j
