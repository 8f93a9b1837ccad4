"""One-dimensional maximization of the constant-ratio functions.

The ratios (root-constant over elementary growth factor) are slowly varying
with single wide peaks, so a coarse deterministic sweep locates the basin
and golden-section refinement certifies a bracket.  Even-integer restricted
searches enumerate the grid exhaustively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from rosenthal.asymptotics import (
    K_bounds,
    elementary_factors,
    g_factor,
)
from rosenthal.constants import G_value, S_value, bell_moment, L_series
from rosenthal.errors import DomainError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

#: Coarse sweep resolution; the ratio peaks observed here are ~10 units wide
#: (and the log-derivative bound stays ~O(1)), so 0.25 cannot step over one.
COARSE_STEP = 0.25
#: Above this point the sweep switches to multiplicative steps.
COARSE_LINEAR_LIMIT = 1000.0
COARSE_FACTOR = 1.05

E_E = math.exp(math.e)


@dataclass(frozen=True)
class ExtremumReport:
    argmax: float
    max_value: float
    bracket_halfwidth: float
    evaluations: int
    grid_step_used: float
    restricted_to_even: bool
    boundary_hit: bool = False
    #: Maximizer inside [15, e^e] where the h-factor is not yet monotone.
    below_ee_flag: bool = False


def _coarse_grid(lo: float, hi: float) -> list[float]:
    pts = []
    x = lo
    while x < min(hi, COARSE_LINEAR_LIMIT):
        pts.append(x)
        x += COARSE_STEP
    if hi > COARSE_LINEAR_LIMIT:
        x = max(lo, COARSE_LINEAR_LIMIT)
        while x < hi:
            pts.append(x)
            x *= COARSE_FACTOR
    pts.append(hi)
    return pts


def maximize_ratio(ratio: Callable[[float], float], lo: float, hi: float,
                   tol: float = 1e-3, even_only: bool = False) -> ExtremumReport:
    """Deterministic maximum search; ties break toward smaller argument.

    Continuous mode: coarse sweep, then golden-section refinement around the
    best grid point down to bracket_halfwidth <= tol, with a 5-point
    unimodality post-check (falls back to a fine sweep if violated).
    Even mode: exhaustive evaluation at even integers of [lo, hi].
    """
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    if tol <= 0:
        raise DomainError("tol must be positive")
    evaluations = 0

    def f(x: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return ratio(x)

    if even_only:
        start = int(math.ceil(lo / 2.0)) * 2
        grid = list(range(start, int(math.floor(hi)) + 1, 2))
        if not grid:
            raise DomainError(f"no even integers in [{lo}, {hi}]")
        best_x, best_v = grid[0], f(float(grid[0]))
        for x in grid[1:]:
            v = f(float(x))
            if v > best_v:
                best_x, best_v = x, v
        return ExtremumReport(
            argmax=float(best_x), max_value=best_v, bracket_halfwidth=2.0,
            evaluations=evaluations, grid_step_used=2.0,
            restricted_to_even=True,
            boundary_hit=best_x in (grid[0], grid[-1]),
            below_ee_flag=lo >= 15.0 and best_x <= E_E,
        )

    grid = _coarse_grid(lo, hi)
    values = [f(x) for x in grid]
    best_i = max(range(len(grid)), key=lambda i: (values[i], -grid[i]))
    boundary = best_i in (0, len(grid) - 1)

    a = grid[max(best_i - 1, 0)]
    b = grid[min(best_i + 1, len(grid) - 1)]
    step_here = max(grid[min(best_i + 1, len(grid) - 1)] - grid[best_i],
                    grid[best_i] - grid[max(best_i - 1, 0)])

    # Golden-section refinement (assumes unimodality inside [a, b]).
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while (b - a) > 2.0 * tol:
        if f1 >= f2:  # ties toward smaller p
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
    xm = 0.5 * (a + b)
    vm = f(xm)
    candidates = [(vm, xm), (f1, x1), (f2, x2), (values[best_i], grid[best_i])]
    vbest, xbest = max(candidates, key=lambda t: (t[0], -t[1]))

    # Unimodality post-check across the final bracket.
    probes = [a + (b - a) * k / 4.0 for k in range(5)]
    pv = [f(x) for x in probes]
    interior_max = max(pv[1:4])
    if interior_max + 1e-12 < max(pv[0], pv[4]) and not boundary:
        # Not unimodal here: fall back to a fine sweep of the coarse cell.
        n_fine = int(math.ceil(step_here / tol)) + 1
        for k in range(n_fine + 1):
            x = max(lo, grid[best_i] - step_here) + (2.0 * step_here) * k / n_fine
            if x > hi:
                break
            v = f(x)
            if v > vbest:
                vbest, xbest = v, x

    return ExtremumReport(
        argmax=xbest, max_value=vbest,
        bracket_halfwidth=max(0.5 * (b - a), tol),
        evaluations=evaluations, grid_step_used=step_here,
        restricted_to_even=False,
        boundary_hit=boundary,
        below_ee_flag=lo >= 15.0 and xbest <= E_E,
    )


def ratio_log_derivative_bound(p: float, kind: str = "G") -> float:
    """Bound on |d/dp log(root-constant/g)| from the term-wise derivative
    bound: L'(p) <= e^{-1}(1/e)(e B(p) - 1), so
    |d log G/dp| <= L'/(p L) + log L / p^2, plus the explicit g' part."""
    log_b = bell_moment(p).log_value
    log_l = L_series(p).log_value
    # (e B - 1)/(e L) <= B/L here (both are > 1 for p >= 4)
    ratio_bl = math.exp(log_b - log_l)
    dlog_root = ratio_bl / (math.e * p) + abs(log_l) / (p * p)
    dlog_g = abs(1.0 / p - 1.0 / (p * math.log(p)))
    if kind == "h":
        # h adds the slowly varying (1 + D + D^2) factor; its log-derivative
        # is below |dD/dp| * 3 with dD/dp = (1 - log log p)/(p log^2 p).
        lp = math.log(p)
        dlog_g += 3.0 * abs(1.0 - math.log(lp)) / (p * lp * lp)
    return dlog_root + dlog_g


@dataclass(frozen=True)
class ConstantEntry:
    name: str
    computed: float
    argmax: float
    reference: float
    reference_argmax: float | None
    deviation: float
    report: ExtremumReport


@dataclass(frozen=True)
class Theorem1Report:
    entries: tuple[ConstantEntry, ...]
    #: Upper envelope of S/g at the truncated search boundary, showing the
    #: interior maximum cannot be beaten beyond it.
    sg_envelope_at_cut: float
    sg_cut: float

    def entry(self, name: str) -> ConstantEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


#: Published values the reproduction is compared against.
THEOREM1_REFERENCE = {
    "C3": (1.77638, 33.4610),
    "C5": (1.77637, 34.0),
    "C7": (1.2054, 71.430),
    "C9": (1.53572, 22.311),
    "C11": (1.03734, 138.149),
    "C_even_h": (1.2053, 72.0),
}

#: Search interval for the symmetric-case ratios; beyond the cut the
#: asymptotic envelope keeps S/g below the interior maximum (checked and
#: reported), which is why the sweep can stop there.
SG_SEARCH_HI = 1.0e4


def _ratio_G_over_g(p: float) -> float:
    return G_value(p) / g_factor(p)


def _ratio_G_over_h(p: float) -> float:
    return G_value(p) / elementary_factors(p)[1]


def _ratio_S_over_g(p: float) -> float:
    return S_value(p) / g_factor(p)


def _ratio_S_over_h(p: float) -> float:
    return S_value(p) / elementary_factors(p)[1]


def reproduce_theorem1(tol: float = 1e-3) -> Theorem1Report:
    """Recompute the six extremal constants and pair them with the published
    values.  Searches whose maximizer lands on an interval boundary are
    flagged in their report (signalling the interval must be widened)."""
    specs = [
        ("C3", _ratio_G_over_g, 4.0, 700.0, False),
        ("C5", _ratio_G_over_g, 4.0, 700.0, True),
        ("C7", _ratio_G_over_h, 15.0, 700.0, False),
        ("C9", _ratio_S_over_g, 4.0, SG_SEARCH_HI, False),
        ("C11", _ratio_S_over_h, 15.0, SG_SEARCH_HI, False),
        ("C_even_h", _ratio_G_over_h, 16.0, 700.0, True),
    ]
    entries = []
    for name, ratio, lo, hi, even in specs:
        rep = maximize_ratio(ratio, lo, hi, tol=tol, even_only=even)
        if rep.boundary_hit and not even:
            # Widen once; the searches here are known to peak well inside.
            rep = maximize_ratio(ratio, lo, hi * 2.0, tol=tol, even_only=even)
        ref_v, ref_x = THEOREM1_REFERENCE[name]
        entries.append(ConstantEntry(
            name=name, computed=rep.max_value, argmax=rep.argmax,
            reference=ref_v, reference_argmax=ref_x,
            deviation=rep.max_value - ref_v, report=rep))
    _, k_up = K_bounds(SG_SEARCH_HI, diagnostic=True)
    envelope = math.exp(k_up / SG_SEARCH_HI) / g_factor(SG_SEARCH_HI)
    return Theorem1Report(entries=tuple(entries),
                          sg_envelope_at_cut=envelope, sg_cut=SG_SEARCH_HI)


def infimum_check(ratio: Callable[[float], float],
                  grid: Sequence[float]) -> tuple[float, bool]:
    """(minimum over the grid, whether the tail trends down toward 1).

    The trend flag requires the last few values to be nonincreasing and to
    stay at or above 1.
    """
    if list(grid) != sorted(grid):
        raise DomainError("grid must be sorted ascending")
    values = [ratio(p) for p in grid]
    tail = values[-3:] if len(values) >= 3 else values
    trend = all(a >= b for a, b in zip(tail, tail[1:])) \
        and all(v >= 1.0 - 1e-12 for v in tail)
    return min(values), trend
