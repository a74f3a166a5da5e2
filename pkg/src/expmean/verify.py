"""Empirical verification of the symbolic mean value.

S(R) is the sum of g over the zeros of f with |Im z| < R, counted with
multiplicity.  The mean value is the limit of S(R)/2R, and the horizontal
boundary integrals stay bounded as R grows, so the empirical mean should
approach the symbolic one like O(1/R).  This module computes S(R)/2R from
located zeros and reports the error trend over a ladder of heights.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from .errors import InputError
from .sums import ExponentialSum, evaluate
from .zerofind import QuadratureConfig, Zero, search_zeros

# flat-trend allowance for the median consecutive-error ratio
_TREND_SLACK = 0.9


@dataclass(frozen=True)
class ReportRow:
    R: float
    count: int
    weighted_sum: complex
    empirical_mean: complex
    abs_error: float


@dataclass(frozen=True)
class ConvergenceReport:
    symbolic_mean: complex
    rows: list[ReportRow]
    verdict: bool
    tolerance: float


def weighted_sum(zeros: list[Zero], g: ExponentialSum) -> complex:
    """Sum of g over the zero list, multiplicities included."""
    total = 0j
    for z in zeros:
        total += z.multiplicity * evaluate(g, z.location)
    return total


def empirical_mean(
    f: ExponentialSum,
    g: ExponentialSum,
    R: float,
    cfg: QuadratureConfig | None = None,
    margin: float = 0.5,
) -> tuple[complex, float]:
    """S(R')/2R' at the safe ordinate R' near R; returns (mean, R')."""
    search = search_zeros(f, R, cfg, margin)
    s = weighted_sum(search.zeros, g)
    return s / (2.0 * search.height), search.height


def convergence_report(
    f: ExponentialSum,
    g: ExponentialSum,
    R_list: list[float],
    cfg: QuadratureConfig | None = None,
    tol: float = 0.05,
    margin: float = 0.5,
) -> ConvergenceReport:
    """Empirical means along increasing heights against the symbolic value.

    The verdict passes when the error at the largest height is below tol
    and the consecutive error ratios do not trend upward.  The boundary
    contribution to S(R)/2R fluctuates quasi-periodically, so over small
    height ladders a genuinely converging error trend can look flat;
    the median ratio therefore only needs to clear 1 minus a small slack
    rather than 1 exactly.  No rate is asserted beyond that, only
    boundedness-driven shrinkage.
    """
    if len(R_list) < 2:
        raise InputError("a convergence report needs at least two heights")
    if any(b <= a for a, b in zip(R_list, R_list[1:])):
        raise InputError("heights must be strictly increasing")
    from .meanvalue import mean_value

    symbolic = mean_value(f, g).mean
    rows = []
    for r in R_list:
        search = search_zeros(f, r, cfg, margin)
        s = weighted_sum(search.zeros, g)
        emp = s / (2.0 * search.height)
        rows.append(
            ReportRow(
                R=search.height,
                count=sum(z.multiplicity for z in search.zeros),
                weighted_sum=s,
                empirical_mean=emp,
                abs_error=abs(emp - symbolic),
            )
        )
    rows.sort(key=lambda row: row.R)
    ratios = []
    for a, b in zip(rows, rows[1:]):
        if a.abs_error == 0 and b.abs_error == 0:
            ratios.append(1.0)
        elif b.abs_error == 0:
            ratios.append(float("inf"))
        else:
            ratios.append(a.abs_error / b.abs_error)
    verdict = rows[-1].abs_error < tol and statistics.median(ratios) >= _TREND_SLACK
    return ConvergenceReport(
        symbolic_mean=symbolic, rows=rows, verdict=verdict, tolerance=tol
    )


def fewnomial_check(zeros: list[Zero], n: int, span: float) -> bool:
    """Fewer than n zeros in every horizontal window of height 0.999/span.

    A sum of n terms with frequency span a_n - a_1 admits fewer than n
    zeros in any horizontal strip strictly lower than 1/(a_n - a_1); this
    scans all anchored windows over the sorted imaginary parts.
    """
    if span <= 0:
        raise InputError("frequency span must be positive")
    h = 0.999 / span
    ims = sorted(
        z.location.imag for z in zeros for _ in range(z.multiplicity)
    )
    j = 0
    for i in range(len(ims)):
        if j < i:
            j = i
        while j < len(ims) and ims[j] - ims[i] < h:
            j += 1
        if j - i >= n:
            return False
    return True
