"""Mean values over the zero set of an exponential sum.

The central quantity is the constant term A of the formal product

    g * f' / (c_k * exp(2*pi*a_k*z)) * (1 / ftilde_k)

where the k-th term is the lowest (FIRST) or highest (LAST) term of f and
ftilde_k is f divided by that term.  The reciprocal is expanded as the
geometric series 1 + (1-ftilde) + (1-ftilde)^2 + ..., which is graded by
frequency: away from the chosen end every power pushes frequencies further
from zero, so only finitely many powers can reach frequency 0 and the
constant term is well defined.  The mean value of g over the zeros of f,
per unit height of a widening horizontal window, is

    mean = (A_last - A_first) / (2*pi).

With g = 1 this collapses to the highest frequency minus the lowest, the
mean density of zeros themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import InputError, ResourceLimitError
from .exact import ExactCoeff, GaussianRational
from .sums import (
    End,
    ExpTerm,
    ExponentialSum,
    Frequency,
    FrequencyBasis,
    DEFAULT_BASIS,
    TWO_PI,
    derivative,
    divide_by_extreme_term,
    extreme_term,
    multiply,
    one_sum,
)

CutoffLike = Union[int, float, str, Fraction]


def _as_cutoff(c: CutoffLike) -> Fraction:
    if isinstance(c, Fraction):
        return abs(c)
    if isinstance(c, (int, float)):
        if not math.isfinite(c):
            raise InputError("cutoff must be finite")
        return abs(Fraction(c))
    if isinstance(c, str):
        return abs(Fraction(c))
    raise InputError(f"not a cutoff value: {c!r}")


@dataclass(frozen=True)
class TruncatedSeries:
    """A formal series kept exactly up to |frequency| <= cutoff."""

    sum: ExponentialSum
    cutoff: Fraction
    end: End


@dataclass(frozen=True)
class MeanValueResult:
    A_first: complex
    A_last: complex
    mean: complex
    neg_generators: list[Frequency]
    pos_generators: list[Frequency]
    # exact-mode extras; None when the inputs carry float coefficients
    A_first_exact: Optional[ExactCoeff] = None
    A_last_exact: Optional[ExactCoeff] = None
    # mean as exact coordinates over the frequency basis:
    # mean = sum_j mean_exact[j] * basis[j]
    mean_exact: Optional[tuple[GaussianRational, ...]] = None


def _truncate(f: ExponentialSum, cutoff: Fraction, end: End) -> ExponentialSum:
    """Drop terms farther than cutoff from frequency zero on the end's side."""
    if end is End.FIRST:
        kept = [t for t in f.terms if f.basis.value_key(t.freq) <= cutoff]
    else:
        kept = [t for t in f.terms if f.basis.value_key(t.freq) >= -cutoff]
    return ExponentialSum(tuple(kept), f.basis, f.exact)


def truncated_reciprocal(
    ftilde: ExponentialSum, end: End, cutoff: CutoffLike
) -> TruncatedSeries:
    """Geometric-series reciprocal of a sum whose constant term is one.

    For end=FIRST every other frequency of ftilde must be positive
    (mirrored for LAST), so each extra factor of (1 - ftilde) pushes
    frequencies strictly away from zero and the expansion below the
    cutoff stabilizes after finitely many rounds.
    """
    cut = _as_cutoff(cutoff)
    basis = ftilde.basis
    zero_freq = Frequency((Fraction(0),) * len(basis))
    c0 = ftilde.coefficient_at(zero_freq)
    is_one = c0.is_one() if ftilde.exact else c0 == 1
    if not is_one:
        raise InputError("reciprocal expansion requires a constant term equal to one")
    for t in ftilde.terms:
        v = basis.value_key(t.freq)
        if end is End.FIRST and v < 0:
            raise InputError("lowest-end expansion given a negative frequency")
        if end is End.LAST and v > 0:
            raise InputError("highest-end expansion given a positive frequency")

    one = one_sum(basis, ftilde.exact)
    base = _truncate(one - ftilde, cut, end)
    acc = one
    power = one
    # frequencies of base are bounded away from 0 by d, so at most
    # floor(cut/d) + 1 rounds contribute below the cutoff
    if not base.is_zero():
        d = min(abs(basis.value_key(t.freq)) for t in base.terms)
        max_rounds = int(cut / d) + 1
    else:
        max_rounds = 0
    rounds = 0
    while not power.is_zero() and rounds < max_rounds:
        power = _truncate(multiply(power, base), cut, end)
        acc = acc + power
        rounds += 1
    if not power.is_zero() and not _truncate(multiply(power, base), cut, end).is_zero():
        raise ResourceLimitError("reciprocal expansion failed to stabilize")
    return TruncatedSeries(acc, cut, end)


def _edge_quotient(f: ExponentialSum, g: ExponentialSum, end: End) -> ExponentialSum:
    """P = g * f' / (extreme term of f)."""
    ext = extreme_term(f, end)
    if f.exact:
        inv = ExactCoeff.one(len(f.basis)).divide_by_plain(ext.coeff)
    else:
        inv = 1.0 / ext.coeff
    inv_sum = ExponentialSum((ExpTerm(inv, -ext.freq),), f.basis, f.exact)
    return multiply(multiply(g, derivative(f)), inv_sum)


def _a_value(
    f: ExponentialSum,
    g: ExponentialSum,
    end: End,
    extra_cutoff: Fraction = Fraction(0),
):
    """Constant term A at the chosen end, in the inputs' coefficient mode.

    extra_cutoff widens the series cutoff past the provably sufficient
    one; the result must not depend on it.
    """
    if f.is_zero():
        raise InputError("mean-value computation requires a non-zero denominator sum")
    basis = f.basis
    zero_c = ExactCoeff.zero(len(basis)) if f.exact else 0j
    p = _edge_quotient(f, g, end)
    if p.is_zero():
        return zero_c
    values = [basis.value_key(t.freq) for t in p.terms]
    if end is End.FIRST:
        cut = max(Fraction(0), -min(values)) + extra_cutoff
    else:
        cut = max(Fraction(0), max(values)) + extra_cutoff
    ftilde = divide_by_extreme_term(f, end)
    series = truncated_reciprocal(ftilde, end, cut)
    series_at = {t.freq.coords: t.coeff for t in series.sum.terms}
    acc = zero_c
    for t in p.terms:
        mate = series_at.get((-t.freq).coords)
        if mate is not None:
            acc = acc + t.coeff * mate
    return acc


def constant_term_A(f: ExponentialSum, g: ExponentialSum, end: End) -> complex:
    """A at the lowest (FIRST) or highest (LAST) frequency end of f."""
    a = _a_value(f, g, end)
    if isinstance(a, ExactCoeff):
        return a.to_complex(f.basis.float_values)
    return a


def constant_term_A_exact(f: ExponentialSum, g: ExponentialSum, end: End) -> ExactCoeff:
    """Exact-mode A; requires exact coefficients on both inputs."""
    if not (f.exact and g.exact):
        raise InputError("exact constant term requires exact-mode sums")
    return _a_value(f, g, end)


def support_semigroup_generators(
    f: ExponentialSum,
) -> tuple[list[Frequency], list[Frequency]]:
    """Difference sets at each end: (lowest - others, highest - others).

    The mean of exp(2*pi*a*z) over the zeros of f can only be nonzero
    when a lies in the semigroup generated by one of these sets; zero
    differences are dropped, duplicates appear once.
    """
    if f.is_zero():
        raise InputError("zero sum has no frequency ends")
    first = f.terms[0].freq
    last = f.terms[-1].freq
    neg: dict[tuple, Frequency] = {}
    pos: dict[tuple, Frequency] = {}
    for t in f.terms[1:]:
        d = first - t.freq
        neg[d.coords] = d
    for t in f.terms[:-1]:
        d = last - t.freq
        pos[d.coords] = d
    key = f.basis.value_key
    return (
        sorted(neg.values(), key=key),
        sorted(pos.values(), key=key),
    )


def semigroup_contains(
    generators: list[Frequency],
    alpha: Frequency,
    bound: int = 1_000_000,
    basis: FrequencyBasis = DEFAULT_BASIS,
) -> bool:
    """Exact test: is alpha a non-negative integer combination of generators?

    All generators must have numeric values of one strict sign.  Search is
    depth-first over multiplier choices with value-based pruning; `bound`
    caps node expansions and overrunning it raises rather than guessing.
    """
    if alpha.is_zero():
        return True
    if not generators:
        return False
    vals = [basis.value_key(g) for g in generators]
    if any(v == 0 for v in vals):
        raise InputError("semigroup generators must be non-zero")
    if all(v > 0 for v in vals):
        sign = 1
    elif all(v < 0 for v in vals):
        sign = -1
    else:
        raise InputError("semigroup generators must share one sign")

    target_val = basis.value_key(alpha)
    if sign * target_val < 0:
        return False

    # mirror everything to the positive side
    if sign < 0:
        gens = [-g for g in generators]
        vals = [-v for v in vals]
        target = -alpha
        target_val = -target_val
    else:
        gens = list(generators)
        target = alpha

    order = sorted(range(len(gens)), key=lambda i: vals[i], reverse=True)
    gens = [gens[i] for i in order]
    vals = [vals[i] for i in order]

    nodes = 0

    def dfs(idx: int, rem: Frequency, rem_val: Fraction) -> bool:
        nonlocal nodes
        if rem_val == 0:
            return rem.is_zero()
        if idx == len(gens) - 1:
            nodes += 1
            if nodes > bound:
                raise ResourceLimitError("semigroup membership search exceeded node bound")
            m = rem_val / vals[idx]
            if m.denominator != 1:
                return False
            scaled = Frequency(tuple(c * m for c in gens[idx].coords))
            return scaled.coords == rem.coords
        top = int(rem_val / vals[idx])
        for m in range(top, -1, -1):
            nodes += 1
            if nodes > bound:
                raise ResourceLimitError("semigroup membership search exceeded node bound")
            step = Frequency(tuple(c * m for c in gens[idx].coords))
            if dfs(idx + 1, rem - step, rem_val - m * vals[idx]):
                return True
        return False

    return dfs(0, target, target_val)


def mean_value(f: ExponentialSum, g: ExponentialSum) -> MeanValueResult:
    """Mean value of g over the zeros of f per unit of window height."""
    a_first = _a_value(f, g, End.FIRST)
    a_last = _a_value(f, g, End.LAST)
    neg, pos = support_semigroup_generators(f)
    if isinstance(a_first, ExactCoeff):
        diff = a_last - a_first
        # every contribution carries exactly one derivative factor, so the
        # plain-scalar component of A is identically zero
        if not diff.scalar.is_zero() or not a_first.scalar.is_zero():
            raise InputError("constant term carries a non-derivative component")
        bf = f.basis.float_values
        mean_c = complex(sum(
            (v.to_complex() * b for v, b in zip(diff.twopi, bf)), 0j
        ))
        return MeanValueResult(
            A_first=a_first.to_complex(bf),
            A_last=a_last.to_complex(bf),
            mean=mean_c,
            neg_generators=neg,
            pos_generators=pos,
            A_first_exact=a_first,
            A_last_exact=a_last,
            mean_exact=diff.twopi,
        )
    return MeanValueResult(
        A_first=a_first,
        A_last=a_last,
        mean=(a_last - a_first) / TWO_PI,
        neg_generators=neg,
        pos_generators=pos,
    )


def mean_zero_count(f: ExponentialSum) -> float:
    """Mean number of zeros per unit height: highest minus lowest frequency."""
    if f.is_zero():
        raise InputError("zero sum has no zero count")
    vals = f.freq_values()
    return float(vals[-1] - vals[0])
