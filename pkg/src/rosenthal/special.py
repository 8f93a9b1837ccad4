"""Special functions underlying every constant.

Exact combinatorics (Stirling and Bell numbers, the acceleration
polynomials) live in Python big integers and are never rounded; the
floating series (fractional Bell moments, the generalized Bell function,
modified Bessel values at argument 1) are carried in log scale as
:class:`SeriesValue` with a rigorous relative tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from rosenthal._backend import kernels
from rosenthal.config import MAX_TERMS, default_rel_tol
from rosenthal.errors import BudgetError, CapacityError, DomainError

#: Cap for the exact integer recurrences.
EXACT_CAP = 400
#: Cap for the acceleration polynomial index m (degree 2m).
POLY_CAP = 60
#: Cap for Bessel orders.
BESSEL_CAP = 3000

# 2^12 panels; the integrand is analytic and 2*pi-periodic, so the uniform
# rule converges spectrally and is exact to double precision here.
QUAD_PANELS = 4096


@dataclass(frozen=True)
class SeriesValue:
    """A positive quantity in log scale plus its truncation certificate."""

    log_value: float
    rel_tail_bound: float
    terms_used: int

    @property
    def value(self) -> float:
        """exp(log_value); may overflow to inf for huge exponents."""
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf


@dataclass(frozen=True)
class IntPolynomial:
    """Exact integer-coefficient polynomial; coeffs[k] multiplies x^k."""

    coeffs: tuple[int, ...]

    @staticmethod
    def from_coeffs(seq: Sequence[int]) -> "IntPolynomial":
        coeffs = list(seq)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return IntPolynomial(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self) -> "IntPolynomial":
        if len(self.coeffs) == 1:
            return IntPolynomial((0,))
        return IntPolynomial.from_coeffs(
            [k * c for k, c in enumerate(self.coeffs)][1:])

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0] * n
        for k, c in enumerate(self.coeffs):
            out[k] += c
        for k, c in enumerate(other.coeffs):
            out[k] += c
        return IntPolynomial.from_coeffs(out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + IntPolynomial.from_coeffs([-c for c in other.coeffs])

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial.from_coeffs(out)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(x)
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    row = [0] * (n + 1)
    for r in range(1, n + 1):
        above = prev[r] if r < n else 0
        row[r] = r * above + prev[r - 1]
    return tuple(row)


def stirling2(n: int, r: int) -> int:
    """Stirling number of the second kind s(n, r): partitions of an n-set
    into r nonempty blocks.  Exact; recurrence s(n,r) = r*s(n-1,r) + s(n-1,r-1)."""
    if n < 0 or r < 0 or r > n:
        raise DomainError(f"stirling2 requires 0 <= r <= n, got n={n}, r={r}")
    if n > EXACT_CAP:
        raise CapacityError(f"stirling2 capped at n <= {EXACT_CAP}")
    return _stirling_row(n)[r]


@lru_cache(maxsize=None)
def _bell_triangle_row(m: int) -> tuple[int, ...]:
    if m == 0:
        return (1,)
    prev = _bell_triangle_row(m - 1)
    row = [prev[-1]]
    for x in prev:
        row.append(row[-1] + x)
    return tuple(row)


def bell_number(m: int) -> int:
    """Bell number B(m): count of set partitions of an m-set.  Exact."""
    if m < 0:
        raise DomainError("bell_number requires m >= 0")
    if m > EXACT_CAP:
        raise CapacityError(f"bell_number capped at m <= {EXACT_CAP}")
    return _bell_triangle_row(m)[0]


def _check_budget(name: str, log_value: float, rel_tail: float,
                  terms: int, rel_tol: float) -> SeriesValue:
    if rel_tail > rel_tol or math.isnan(log_value):
        raise BudgetError(
            f"{name}: tail bound {rel_tail:.3e} above tolerance {rel_tol:.3e} "
            f"after {terms} terms")
    return SeriesValue(log_value, rel_tail, terms)


def bell_moment(p: float, rel_tol: float | None = None) -> SeriesValue:
    """Fractional Bell moment: log of e^{-1} * sum_{n>=1} n^p / n!.

    For integer p this agrees with bell_number(p) (Dobinski); for real p it
    is the p-th moment of a unit-mean Poisson variable.
    """
    if not 0.0 < p <= 1e6:
        raise DomainError(f"bell_moment requires 0 < p <= 1e6, got {p}")
    tol = rel_tol if rel_tol is not None else default_rel_tol(p)
    out = kernels.gen_bell_log(0.0, p, 1.0, tol, MAX_TERMS)
    return _check_budget("bell_moment", *out, tol)


def generalized_bell(a: float, p: float, z: float,
                     rel_tol: float | None = None) -> SeriesValue:
    """log of sum_{n>=0} |n-a|^p z^n / (e * n!), the weighted Poisson moment.

    An exact hit n == a contributes nothing for p > 0 and one unit for
    p == 0 (the 0^0 = 1 convention keeps the p=0 case a total probability).
    """
    if p < 0 or p > 1e6:
        raise DomainError(f"generalized_bell requires 0 <= p <= 1e6, got {p}")
    if not 0.0 < z <= 1.0:
        raise DomainError(f"generalized_bell requires z in (0, 1], got {z}")
    tol = rel_tol if rel_tol is not None else default_rel_tol(max(p, 1.0))
    out = kernels.gen_bell_log(float(a), float(p), float(z), tol, MAX_TERMS)
    return _check_budget("generalized_bell", *out, tol)


def bessel_In_one(n: int) -> float:
    """I_n(1) from its power series, relative error ~1e-15.

    Computed in log scale; for orders where the true value underflows the
    double range the nearest representable (sub)normal is returned.
    """
    if n < 0 or n > BESSEL_CAP:
        raise DomainError(f"bessel_In_one requires 0 <= n <= {BESSEL_CAP}")
    return math.exp(log_bessel_In_one(n))


def log_bessel_In_one(n: int) -> float:
    """log I_n(1); finite for every order up to the cap."""
    if n < 0 or n > BESSEL_CAP:
        raise DomainError(f"log_bessel_In_one requires 0 <= n <= {BESSEL_CAP}")
    return kernels.log_bessel_i1(n)


_QUAD_THETA = None
_QUAD_EXPCOS = None


def _quad_grid():
    global _QUAD_THETA, _QUAD_EXPCOS
    if _QUAD_THETA is None:
        theta = -math.pi + 2.0 * math.pi * np.arange(QUAD_PANELS) / QUAD_PANELS
        _QUAD_THETA = theta
        _QUAD_EXPCOS = np.exp(np.cos(theta))
    return _QUAD_THETA, _QUAD_EXPCOS


def bessel_In_one_integral(n: int) -> float:
    """I_n(1) as (2*pi)^{-1} * integral of exp(cos t) cos(n t) over a period,
    by the uniform trapezoid rule (spectrally accurate for periodic
    analytic integrands)."""
    if n < 0 or n > 200:
        raise DomainError("bessel_In_one_integral requires 0 <= n <= 200")
    theta, expcos = _quad_grid()
    return float(np.mean(expcos * np.cos(n * theta)))


def cosine_poly_integral(poly: IntPolynomial, n: int) -> float:
    """(2*pi)^{-1} * integral of exp(cos t) * poly(cos t) * cos(n t) dt over
    a period, same rule as bessel_In_one_integral."""
    theta, expcos = _quad_grid()
    vals = expcos * poly.eval_float(np.cos(theta))
    return float(np.mean(vals * np.cos(n * theta)))


@lru_cache(maxsize=None)
def poly_P(m: int) -> IntPolynomial:
    """Acceleration polynomial of degree 2m: the 2m-th derivative of
    exp(cos t) equals exp(cos t) * P_2m(cos t).

    Recursion P_{2m+2} = (1-x^2)(P'' + 2P' + P) - x(P' + P), P_0 = 1.
    """
    if m < 0:
        raise DomainError("poly_P requires m >= 0")
    if m > POLY_CAP:
        raise CapacityError(f"poly_P capped at m <= {POLY_CAP}")
    if m == 0:
        return IntPolynomial((1,))
    prev = poly_P(m - 1)
    d1 = prev.derivative()
    d2 = d1.derivative()
    one_minus_x2 = IntPolynomial((1, 0, -1))
    x = IntPolynomial((0, 1))
    return one_minus_x2 * (d2 + d1 + d1 + prev) - x * (d1 + prev)
