"""Exact and asymptotic constants of the Rosenthal moment inequalities.

Four independent computation routes (Poisson-moment series, exact
big-integer combinatorics, Bessel-integral acceleration, saddle-point
asymptotics) cross-validate each other; see the CLI (`rosenthal --help`)
for the user-facing surface.
"""

from rosenthal._backend import BACKEND_NAME
from rosenthal.constants import (
    BigRationalDyadic,
    ConstantValue,
    G_value,
    K_accelerated,
    K_derivative,
    K_even_exact,
    K_series,
    K_via_polynomial,
    L_derivative,
    L_even_exact,
    L_odd_exact,
    L_series,
    S_closed_form,
    S_value,
    constants_at,
)
from rosenthal.errors import (
    BudgetError,
    CapacityError,
    DomainError,
    InconsistencyError,
    RosenthalError,
)
from rosenthal.special import (
    IntPolynomial,
    SeriesValue,
    bell_moment,
    bell_number,
    bessel_In_one,
    bessel_In_one_integral,
    generalized_bell,
    log_bessel_In_one,
    poly_P,
    stirling2,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "BigRationalDyadic",
    "BudgetError",
    "CapacityError",
    "ConstantValue",
    "DomainError",
    "G_value",
    "InconsistencyError",
    "IntPolynomial",
    "K_accelerated",
    "K_derivative",
    "K_even_exact",
    "K_series",
    "K_via_polynomial",
    "L_derivative",
    "L_even_exact",
    "L_odd_exact",
    "L_series",
    "RosenthalError",
    "S_closed_form",
    "S_value",
    "SeriesValue",
    "bell_moment",
    "bell_number",
    "bessel_In_one",
    "bessel_In_one_integral",
    "constants_at",
    "generalized_bell",
    "log_bessel_In_one",
    "poly_P",
    "stirling2",
]
