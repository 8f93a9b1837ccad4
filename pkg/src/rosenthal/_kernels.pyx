# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: log-scale series summation and Poisson sampling.

Mirror of rosenthal._kernels_py, operation for operation (same evaluation
order, same libm calls), so both backends agree to the last bit on the
sampling paths and to rounding noise on the series paths.
"""

from libc.math cimport exp, fabs, floor, lgamma, log, sqrt

cdef double INF = float("inf")
cdef double LOG2 = log(2.0)
cdef double CORR_MAX = exp(0.25)

BACKEND_NAME = "cython"


cdef double _bessel_corr(long n) nogil:
    cdef double total = 1.0
    cdef double term = 1.0
    cdef long k = 0
    while term > 1e-18 * total:
        k += 1
        term *= 0.25 / (k * (n + k))
        total += term
    return total


def bessel_corr(n):
    """Correction factor C(n) with I_n(1) = 2^{-n}/n! * C(n)."""
    return _bessel_corr(<long> n)


cdef double _log_bessel_i1(long n) nogil:
    return -n * LOG2 - lgamma(n + 1.0) + log(_bessel_corr(n))


def log_bessel_i1(n):
    """log I_n(1)."""
    return _log_bessel_i1(<long> n)


cdef double _solve_peak(double p, double c) nogil:
    cdef double x, lx, f, fp, step
    cdef double start_log = log(p if p > 4.0 else 4.0) + c
    cdef int i
    x = p / (start_log if start_log > 1.0 else 1.0)
    if x < 2.0:
        x = 2.0
    for i in range(60):
        lx = log(x) + c
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
        if fabs(step) < 1e-9 * x + 1e-12:
            break
    return x


cdef inline double _gb_log_term(long n, double a, double p, double zl) nogil:
    cdef double d = fabs(n - a)
    if d == 0.0:
        return -INF
    return p * log(d) + n * zl - lgamma(n + 1.0)


cdef long _gen_bell_impl(double a, double p, double z, double rel_tol,
                         long max_terms, double* out_log,
                         double* out_tail) nogil:
    cdef double zl = log(z)
    cdef double s, term, r, tail, m, lt, lt_next, ts, bound
    cdef double tail_up, tail_down
    cdef long n, n_peak, low, terms

    if p == 0.0:
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
                out_log[0] = log(s) - 1.0
                out_tail[0] = tail / s
                return n + 1

    low = 0
    n_peak = <long> (_solve_peak(p, -zl) + 0.5)
    if n_peak < low + 1:
        n_peak = low + 1
    while _gb_log_term(n_peak, a, p, zl) == -INF:
        n_peak += 1
    while _gb_log_term(n_peak + 1, a, p, zl) > _gb_log_term(n_peak, a, p, zl):
        n_peak += 1
    while n_peak > low + 1 and \
            _gb_log_term(n_peak - 1, a, p, zl) > _gb_log_term(n_peak, a, p, zl):
        n_peak -= 1

    m = _gb_log_term(n_peak, a, p, zl)
    s = 1.0
    terms = 1

    tail_up = INF
    n = n_peak
    lt = m
    while True:
        n += 1
        lt_next = _gb_log_term(n, a, p, zl)
        ts = exp(lt_next - m)
        s += ts
        terms += 1
        r = exp(_gb_log_term(n + 1, a, p, zl) - lt_next)
        if r < 0.75:
            bound = ts * r / (1.0 - r)
            if bound <= 0.25 * rel_tol * s:
                tail_up = bound
                break
        if terms >= max_terms:
            tail_up = ts
            break
        lt = lt_next

    tail_down = 0.0
    n = n_peak
    while n > low:
        n -= 1
        lt = _gb_log_term(n, a, p, zl)
        if lt == -INF:
            continue
        ts = exp(lt - m)
        s += ts
        terms += 1
        if n - 1 > a + 1.0:
            r = exp(_gb_log_term(n - 1, a, p, zl) - lt)
            if r < 0.75:
                bound = ts * r / (1.0 - r)
                if bound <= 0.25 * rel_tol * s:
                    tail_down = bound
                    break

    out_log[0] = m + log(s) - 1.0
    out_tail[0] = (tail_up + tail_down) / s
    return terms


def gen_bell_log(double a, double p, double z, double rel_tol, long max_terms):
    """log of e^{-1} * sum_{n>=0} |n-a|^p z^n / n!  (0^0 := 1 at p == 0).

    Returns (log_value, rel_tail_bound, terms_used)."""
    cdef double log_value, rel_tail
    cdef long terms
    with nogil:
        terms = _gen_bell_impl(a, p, z, rel_tol, max_terms,
                               &log_value, &rel_tail)
    return log_value, rel_tail, terms


cdef inline double _k_log_term(long n, double p, int order) nogil:
    cdef double v = p * log(n) - n * LOG2 - lgamma(n + 1.0) \
        + log(_bessel_corr(n))
    if order > 0:
        if n == 1:
            return -INF
        v += order * log(log(n))
    return v


cdef long _k_series_impl(double p, int order, double rel_tol, long max_terms,
                         double* out_log, double* out_tail) nogil:
    cdef double s, m, ts, r, bound
    cdef double tail_up, tail_down
    cdef long n, n_peak, nmin, terms

    n_peak = <long> (_solve_peak(p, LOG2) + 0.5)
    if n_peak < 2:
        n_peak = 2
    while _k_log_term(n_peak + 1, p, order) > _k_log_term(n_peak, p, order):
        n_peak += 1
    while n_peak > 1 and \
            _k_log_term(n_peak - 1, p, order) > _k_log_term(n_peak, p, order):
        n_peak -= 1
    if _k_log_term(n_peak, p, order) == -INF:
        n_peak += 1

    m = _k_log_term(n_peak, p, order)
    s = 1.0
    terms = 1

    tail_up = INF
    n = n_peak
    while True:
        n += 1
        ts = exp(_k_log_term(n, p, order) - m)
        s += ts
        terms += 1
        r = ((n + 1.0) / n) ** p / (2.0 * (n + 1.0))
        if order > 0:
            r *= (log(n + 1.0) / log(n)) ** order
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
        ts = exp(_k_log_term(n, p, order) - m)
        s += ts
        terms += 1
        if n > nmin + 1:
            r = ((n - 1.0) / n) ** p * (2.0 * n) * CORR_MAX
            if order > 0 and n - 1 > 1:
                r *= (log(n - 1.0) / log(n)) ** order
            if r < 0.75:
                bound = ts * r / (1.0 - r)
                if bound <= 0.25 * rel_tol * s:
                    tail_down = bound
                    break

    out_log[0] = LOG2 - 1.0 + m + log(s)
    out_tail[0] = (tail_up + tail_down) / s
    return terms


def k_series_log(double p, int order, double rel_tol, long max_terms):
    """log of (2/e) * sum_{n>=1} n^p log^order(n) I_n(1).

    Returns (log_value, rel_tail_bound, terms_used)."""
    cdef double log_value, rel_tail
    cdef long terms
    with nogil:
        terms = _k_series_impl(p, order, rel_tol, max_terms,
                               &log_value, &rel_tail)
    return log_value, rel_tail, terms


cdef inline double _ld_log_term(long n, double p, int order) nogil:
    return p * log(n - 1.0) + order * log(log(n - 1.0)) - lgamma(n + 1.0)


cdef long _l_derivative_impl(double p, int order, double rel_tol,
                             long max_terms, double* out_log,
                             double* out_tail) nogil:
    cdef double s, m, ts, r, bound, lt
    cdef double tail_up, tail_down
    cdef long n, n_peak, terms

    n_peak = <long> (_solve_peak(p, 0.0) + 1.5)
    if n_peak < 3:
        n_peak = 3
    while _ld_log_term(n_peak + 1, p, order) > _ld_log_term(n_peak, p, order):
        n_peak += 1
    while n_peak > 3 and \
            _ld_log_term(n_peak - 1, p, order) > _ld_log_term(n_peak, p, order):
        n_peak -= 1

    m = _ld_log_term(n_peak, p, order)
    s = 1.0
    terms = 1

    tail_up = INF
    n = n_peak
    while True:
        n += 1
        lt = _ld_log_term(n, p, order)
        ts = exp(lt - m)
        s += ts
        terms += 1
        r = exp(_ld_log_term(n + 1, p, order) - lt)
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
        lt = _ld_log_term(n, p, order)
        ts = exp(lt - m)
        s += ts
        terms += 1
        if n - 1 > 3:
            r = exp(_ld_log_term(n - 1, p, order) - lt)
            if r < 0.75:
                bound = ts * r / (1.0 - r)
                if bound <= 0.25 * rel_tol * s:
                    tail_down = bound
                    break

    out_log[0] = m + log(s) - 1.0
    out_tail[0] = (tail_up + tail_down) / s
    return terms


def l_derivative_log(double p, int order, double rel_tol, long max_terms):
    """log of e^{-1} * sum_{n>=3} (n-1)^p log^order(n-1) / n!.

    Returns (log_value, rel_tail_bound, terms_used)."""
    cdef double log_value, rel_tail
    cdef long terms
    with nogil:
        terms = _l_derivative_impl(p, order, rel_tol, max_terms,
                                   &log_value, &rel_tail)
    return log_value, rel_tail, terms


def poisson_inversion(double lam, double[::1] u, long long[::1] out):
    """Poisson draws by CDF search, one uniform per draw (lam <= 30)."""
    cdef Py_ssize_t n = out.shape[0]
    cdef double q0 = exp(-lam)
    cdef double ui, q, cdf
    cdef long k
    cdef Py_ssize_t i
    with nogil:
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


def poisson_ptrs_fill(double lam, double[::1] u, long long[::1] out,
                      Py_ssize_t start):
    """Poisson draws by transformed rejection (PTRS), two uniforms per
    attempt; returns (next_fill_index, uniforms_consumed)."""
    cdef double b = 0.931 + 2.53 * sqrt(lam)
    cdef double a = -0.059 + 0.02483 * b
    cdef double inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
    cdef double v_r = 0.9277 - 3.6224 / (b - 2.0)
    cdef double log_lam = log(lam)
    cdef Py_ssize_t n = out.shape[0]
    cdef Py_ssize_t nu = u.shape[0]
    cdef Py_ssize_t i = start
    cdef Py_ssize_t j = 0
    cdef double uu, v, us, kd
    with nogil:
        while i < n and j + 2 <= nu:
            uu = u[j] - 0.5
            v = u[j + 1]
            j += 2
            us = 0.5 - fabs(uu)
            if us <= 0.0:  # u exactly on the edge; reject the attempt
                continue
            kd = floor((2.0 * a / us + b) * uu + lam + 0.43)
            if us >= 0.07 and v <= v_r:
                out[i] = <long long> kd
                i += 1
                continue
            if kd < 0 or (us < 0.013 and v > us):
                continue
            if log(v * inv_alpha / (a / (us * us) + b)) \
                    <= kd * log_lam - lam - lgamma(kd + 1.0):
                out[i] = <long long> kd
                i += 1
    return i, j
