"""The four routes to the moment-inequality constants.

K(p) and L(p) are the p-th powers of the symmetric-case and centered-case
constants; S(p) and G(p) their p-th roots.  Routes:

* direct series over Poisson moments (any real p >= 2),
* exact big-integer combinatorics at even p (dyadic double sum and the
  binomial/Bell sum),
* the derivative-polynomial route K(2m) = (-1)^m P_2m(1),
* the accelerated Bessel-integral sum (moderate real p),
* closed form on (2, 4] for the symmetric case.

Every route is independent of the others, which is what makes the
cross-checks in the test suite meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from rosenthal._backend import kernels
from rosenthal.config import MAX_TERMS, default_rel_tol
from rosenthal.errors import BudgetError, DomainError, InconsistencyError
from rosenthal.special import (
    SeriesValue,
    bell_moment,
    bell_number,
    cosine_poly_integral,
    generalized_bell,
    poly_P,
    stirling2,
)


@dataclass(frozen=True)
class BigRationalDyadic:
    """Exact dyadic rational: numerator * 2^(-shift), canonical form
    (numerator odd, or shift == 0)."""

    numerator: int
    shift: int = 0

    @staticmethod
    def make(numerator: int, shift: int = 0) -> "BigRationalDyadic":
        if shift < 0:
            raise DomainError("shift must be nonnegative")
        while shift > 0 and numerator % 2 == 0:
            numerator //= 2
            shift -= 1
        return BigRationalDyadic(numerator, shift)

    def __add__(self, other: "BigRationalDyadic") -> "BigRationalDyadic":
        s = max(self.shift, other.shift)
        num = (self.numerator << (s - self.shift)) \
            + (other.numerator << (s - other.shift))
        return BigRationalDyadic.make(num, s)

    def __mul__(self, other: "BigRationalDyadic") -> "BigRationalDyadic":
        return BigRationalDyadic.make(self.numerator * other.numerator,
                                      self.shift + other.shift)

    @property
    def is_integer(self) -> bool:
        return self.shift == 0

    def to_int(self) -> int:
        if not self.is_integer:
            raise InconsistencyError(
                f"dyadic value {self.numerator}*2^-{self.shift} is not integer")
        return self.numerator


ValueT = Union[SeriesValue, int, float]


@dataclass(frozen=True)
class ConstantValue:
    """One constant at one exponent, tagged with how it was computed."""

    p: float
    kind: str  # K | L | S | G
    value: ValueT
    route: str  # series | combinatorial | accelerated | closed_form

    @property
    def as_float(self) -> float:
        if isinstance(self.value, SeriesValue):
            return self.value.value
        return float(self.value)


def L_series(p: float, rel_tol: float | None = None) -> SeriesValue:
    """Centered-case constant L(p) = e^{-1} sum |n-1|^p / n!, log scale."""
    if p < 2:
        raise DomainError(f"L_series requires p >= 2, got {p}")
    return generalized_bell(1.0, p, 1.0, rel_tol)


def G_value(p: float, rel_tol: float | None = None) -> float:
    """G(p) = L(p)^{1/p}."""
    return math.exp(L_series(p, rel_tol).log_value / p)


def K_series(p: float, rel_tol: float | None = None) -> SeriesValue:
    """Symmetric-case constant K(p) = (2/e) sum n^p I_n(1), log scale.

    Each I_n(1) is evaluated through its log plus a short correction series,
    so the terms stay meaningful long after I_n(1) underflows.
    """
    if p < 2:
        raise DomainError(f"K_series requires p >= 2, got {p}")
    tol = rel_tol if rel_tol is not None else default_rel_tol(p)
    log_value, tail, terms = kernels.k_series_log(float(p), 0, tol, MAX_TERMS)
    if tail > tol or math.isnan(log_value):
        raise BudgetError(f"K_series({p}): tail {tail:.3e} above {tol:.3e}")
    return SeriesValue(log_value, tail, terms)


def S_closed_form(p: float) -> float:
    """Symmetric-case root on (2, 4]: (1 + sqrt(2^p/pi) Gamma((p+1)/2))^{1/p}."""
    if not 2.0 < p <= 4.0:
        raise DomainError(f"closed form valid on (2, 4], got {p}")
    return (1.0 + math.sqrt(2.0 ** p / math.pi)
            * math.gamma((p + 1.0) / 2.0)) ** (1.0 / p)


def S_value(p: float, rel_tol: float | None = None) -> float:
    """S(p): 1 at p=2, closed form on (2,4], Poisson-difference series above.

    The two branches agree at p = 4 (both give sqrt(2)).
    """
    if p < 2:
        raise DomainError(f"S_value requires p >= 2, got {p}")
    if p == 2:
        return 1.0
    if p <= 4:
        return S_closed_form(p)
    return math.exp(K_series(p, rel_tol).log_value / p)


def K_even_exact(m: int) -> int:
    """K(2m) by the exact dyadic double sum over Stirling numbers.

    The final dyadic value must reduce to an integer; anything else is an
    implementation bug, not a data condition.
    """
    if not 1 <= m <= 100:
        raise DomainError(f"K_even_exact requires 1 <= m <= 100, got {m}")
    p = 2 * m
    total = BigRationalDyadic(0)
    for l in range(p + 1):
        inner = BigRationalDyadic(0)
        for q in range(p - l + 1):
            s_q = stirling2(p - l, q)
            if s_q == 0:
                continue
            for r in range(l + 1):
                s_r = stirling2(l, r)
                if s_r == 0:
                    continue
                inner = inner + BigRationalDyadic.make(s_q * s_r, r + q)
        sign = -1 if l % 2 else 1
        total = total + inner * BigRationalDyadic(sign * math.comb(p, l))
    return total.to_int()


def L_even_exact(m: int) -> int:
    """L(2m) by the exact binomial/Bell sum."""
    if not 1 <= m <= 100:
        raise DomainError(f"L_even_exact requires 1 <= m <= 100, got {m}")
    p = 2 * m
    return sum((-1) ** l * math.comb(p, l) * bell_number(p - l)
               for l in range(p + 1))


def L_odd_exact(p: int) -> tuple[float, int]:
    """L(p) for odd p >= 5: returns (2/e + N_p, N_p) with the integer part
    N_p = sum_k (-1)^k C(p,k) B(p-k) computed exactly."""
    if p % 2 == 0 or not 5 <= p <= 199:
        raise DomainError(
            f"L_odd_exact requires odd p in [5, 199], got {p}")
    n_p = sum((-1) ** k * math.comb(p, k) * bell_number(p - k)
              for k in range(p + 1))
    return 2.0 / math.e + n_p, n_p


def K_via_polynomial(m: int) -> int:
    """K(2m) = (-1)^m P_2m(1) with the exact acceleration polynomial."""
    if m < 1:
        raise DomainError("K_via_polynomial requires m >= 1")
    return (-1) ** m * poly_P(m)(1)


def K_accelerated(p: float, m: int,
                  rel_tol: float = 1e-12) -> SeriesValue:
    """K(p) through the integral acceleration: the order-2m derivative of
    exp(cos t) turns the Bessel weight into n^{-2m} decay, so

        K(p) = (-1)^m (pi e)^{-1} sum_n n^{p-2m} Q_m(n),
        Q_m(n) = integral of exp(cos t) P_2m(cos t) cos(n t) dt.

    m = 0 reduces to the plain series route.
    """
    if m < 0 or m > 10:
        raise DomainError("K_accelerated requires 0 <= m <= 10")
    if p < 2 or (m > 0 and 2 * m >= p):
        raise DomainError(
            f"K_accelerated requires 2m < p (got p={p}, m={m})")
    if m == 0:
        # P_0 = 1 turns the accelerated sum back into the plain series.
        return K_series(p, rel_tol)
    poly = poly_P(m)
    sign = -1.0 if m % 2 else 1.0
    total = 0.0
    n = 0
    while True:
        n += 1
        q_n = cosine_poly_integral(poly, n) * 2.0 * math.pi
        total += sign * (n ** (p - 2 * m)) * q_n
        # Remaining terms are n'^p * 2*pi*I_n'(1) < 2*pi*e^{1/4} n'^p 2^-n'/n'!.
        log_next = (p * math.log(n + 1.0) + math.log(2.0 * math.pi) + 0.25
                    - (n + 1.0) * math.log(2.0) - math.lgamma(n + 2.0))
        if total > 0 and log_next < math.log(total) + math.log(rel_tol) - 2.0:
            break
        if n > 400:
            raise BudgetError(f"K_accelerated({p}, {m}) did not settle")
    value = total / (math.pi * math.e)
    if value <= 0:
        raise InconsistencyError("accelerated route produced a nonpositive sum")
    return SeriesValue(math.log(value), rel_tol, n)


def L_derivative(p: float, m: int = 1,
                 rel_tol: float | None = None) -> tuple[float, float]:
    """m-th derivative of L at p (term-wise series), plus its a-priori bound
    e^{-1} (m/e)^m (e B(p) - 1).  Returns (value, bound); value <= bound."""
    if p < 4:
        raise DomainError(f"L_derivative requires p >= 4, got {p}")
    if not 1 <= m <= 4:
        raise DomainError("L_derivative supports orders 1..4")
    tol = rel_tol if rel_tol is not None else default_rel_tol(p)
    log_value, tail, terms = kernels.l_derivative_log(float(p), m, tol,
                                                      MAX_TERMS)
    if tail > tol:
        raise BudgetError(f"L_derivative({p}, {m}): tail {tail:.3e}")
    value = math.exp(log_value)
    log_bound = (-1.0 + m * (math.log(m) - 1.0)
                 + _log_e_bell_minus_one(p, tol))
    bound = math.exp(log_bound)
    if value > bound * (1.0 + 1e-9):
        raise InconsistencyError(
            f"derivative {value} exceeds its bound {bound}")
    return value, bound


def K_derivative(p: float, m: int = 1,
                 rel_tol: float | None = None) -> float:
    """m-th derivative of K at p via the term-wise series
    (2/e) sum n^p log^m(n) I_n(1)."""
    if p < 4:
        raise DomainError(f"K_derivative requires p >= 4, got {p}")
    if not 1 <= m <= 4:
        raise DomainError("K_derivative supports orders 1..4")
    tol = rel_tol if rel_tol is not None else default_rel_tol(p)
    log_value, tail, terms = kernels.k_series_log(float(p), m, tol, MAX_TERMS)
    if tail > tol:
        raise BudgetError(f"K_derivative({p}, {m}): tail {tail:.3e}")
    return math.exp(log_value)


def _log_e_bell_minus_one(p: float, tol: float) -> float:
    """log(e * B(p) - 1), stable for huge B(p)."""
    log_b = bell_moment(p, tol).log_value
    if log_b > 50.0:
        return 1.0 + log_b
    return math.log(math.e * math.exp(log_b) - 1.0)


def constants_at(p: float, rel_tol: float | None = None) -> dict[str, ConstantValue]:
    """All four constants at one exponent, routed like the tables: exact
    combinatorics at even integer p <= 40, series otherwise."""
    if p < 2:
        raise DomainError(f"constants require p >= 2, got {p}")
    even = p == int(p) and int(p) % 2 == 0 and p <= 40
    if even:
        m = int(p) // 2
        k_exact = K_even_exact(m)
        l_exact = L_even_exact(m)
        k = ConstantValue(p, "K", k_exact, "combinatorial")
        l = ConstantValue(p, "L", l_exact, "combinatorial")
        s = ConstantValue(p, "S", k_exact ** (1.0 / p), "combinatorial")
        g = ConstantValue(p, "G", l_exact ** (1.0 / p), "combinatorial")
        return {"K": k, "L": l, "S": s, "G": g}
    l_sv = L_series(p, rel_tol)
    if p == 2:
        k = ConstantValue(p, "K", 1, "closed_form")
        s = ConstantValue(p, "S", 1.0, "closed_form")
    elif p < 4:
        s_val = S_closed_form(p)
        k = ConstantValue(p, "K", s_val ** p, "closed_form")
        s = ConstantValue(p, "S", s_val, "closed_form")
    else:
        k_sv = K_series(p, rel_tol)
        k = ConstantValue(p, "K", k_sv, "series")
        s = ConstantValue(p, "S", math.exp(k_sv.log_value / p), "series")
    return {
        "K": k,
        "L": ConstantValue(p, "L", l_sv, "series"),
        "S": s,
        "G": ConstantValue(p, "G", math.exp(l_sv.log_value / p), "series"),
    }
