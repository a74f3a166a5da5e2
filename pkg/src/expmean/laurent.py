"""Laurent polynomials with integer exponents: the algebraic cross-check.

For a Laurent polynomial f the sum of g over the zeros of f away from the
origin equals A_n - A_1, where A_1 is the coefficient of 1/z in the series
expansion of g*f'/f in ascending powers and A_n is the same coefficient in
descending powers.  The module computes that difference two independent
ways:

* through the same truncated-series engine the exponential case uses,
  mapping z^k to exp(2*pi*k*z) (the exponential derivative carries the
  factor of z that turns the 1/z coefficient into a constant term), and
* by locating the roots numerically and adding up g's values.

Agreement between the two is the main correctness oracle for the series
engine on commensurate frequencies.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import InputError, NumericalError
from .meanvalue import constant_term_A
from .sums import DEFAULT_BASIS, End, ExponentialSum, TWO_PI, exp_sum

_CLUSTER_RADIUS = 1e-7
_MAX_ITER = 500


class LaurentPolynomial:
    """Map from integer exponent to complex coefficient; zeros dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, complex]):
        clean = {}
        for k, c in terms.items():
            if not isinstance(k, int):
                raise InputError(f"exponent is not an integer: {k!r}")
            c = complex(c)
            if c != 0:
                clean[int(k)] = c
        self.terms: dict[int, complex] = dict(sorted(clean.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def min_exponent(self) -> int:
        if self.is_zero():
            raise InputError("zero polynomial has no exponents")
        return next(iter(self.terms))

    def max_exponent(self) -> int:
        if self.is_zero():
            raise InputError("zero polynomial has no exponents")
        return next(reversed(self.terms))

    def exponent_span(self) -> int:
        return self.max_exponent() - self.min_exponent()

    def evaluate(self, z: complex) -> complex:
        return sum(c * z**k for k, c in self.terms.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __repr__(self) -> str:
        if self.is_zero():
            return "LaurentPolynomial(0)"
        bits = [f"{c!r}*z^{k}" for k, c in self.terms.items()]
        return "LaurentPolynomial(" + " + ".join(bits) + ")"


def laurent(terms: Mapping[int, complex]) -> LaurentPolynomial:
    return LaurentPolynomial(terms)


def _ordinary_coefficients(p: LaurentPolynomial) -> tuple[list[complex], int]:
    """Coefficients of z^{-k_min} * p, ascending, plus the shift k_min."""
    k0 = p.min_exponent()
    d = p.max_exponent() - k0
    coeffs = [0j] * (d + 1)
    for k, c in p.terms.items():
        coeffs[k - k0] = c
    return coeffs, k0


def _durand_kerner(coeffs: list[complex]) -> np.ndarray:
    """All roots of an ordinary polynomial given by ascending coefficients.

    Simultaneous (Weierstrass) iteration; the constant term must be
    non-zero, which the exponent shift guarantees.
    """
    d = len(coeffs) - 1
    lead = coeffs[-1]
    monic = np.array([c / lead for c in coeffs], dtype=np.complex128)
    # Cauchy bound on root magnitude gives the starting circle
    radius = 1.0 + max(abs(c) for c in monic[:-1])
    angles = 2.0 * math.pi * np.arange(d) / d + 0.4
    roots = radius * np.exp(1j * angles)

    powers = np.arange(d + 1)
    tol = 1e-12 * (1.0 + abs(lead))

    def presidual(zs: np.ndarray) -> np.ndarray:
        vals = (zs[:, None] ** powers) @ (monic * lead)
        return np.abs(vals)

    for _ in range(_MAX_ITER):
        vals = (roots[:, None] ** powers) @ monic
        diff = roots[:, None] - roots[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = diff.prod(axis=1)
        step = vals / denom
        roots = roots - step
        if np.max(presidual(roots)) <= tol and np.max(np.abs(step)) <= 1e-13 * (
            1.0 + np.max(np.abs(roots))
        ):
            return roots
    if np.max(presidual(roots)) <= tol:
        return roots
    raise NumericalError(
        f"root iteration did not converge in {_MAX_ITER} steps "
        f"(residual {np.max(presidual(roots)):.3e})"
    )


def roots_nonzero(p: LaurentPolynomial) -> list[tuple[complex, int]]:
    """Roots away from the origin, with multiplicities, sorted by position.

    Total multiplicity always equals the exponent span.  Close roots
    (within 1e-7) are merged into one entry with their count.
    """
    if p.is_zero():
        raise InputError("zero polynomial has no root set")
    coeffs, _ = _ordinary_coefficients(p)
    d = len(coeffs) - 1
    if d == 0:
        return []
    roots = _durand_kerner(coeffs)

    order = sorted(range(d), key=lambda i: (roots[i].real, roots[i].imag))
    clusters: list[list[complex]] = []
    for i in order:
        z = complex(roots[i])
        placed = False
        for cl in clusters:
            if abs(z - cl[0]) <= _CLUSTER_RADIUS:
                cl.append(z)
                placed = True
                break
        if not placed:
            clusters.append([z])
    out = []
    for cl in clusters:
        center = sum(cl) / len(cl)
        out.append((center, len(cl)))
    out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return out


def sum_over_roots(f: LaurentPolynomial, g: LaurentPolynomial) -> complex:
    """Sum of g's values, with multiplicity, over the non-zero roots of f."""
    total = 0j
    for z, mult in roots_nonzero(f):
        total += mult * g.evaluate(z)
    return total


def _exp_image(p: LaurentPolynomial) -> ExponentialSum:
    return exp_sum([(c, Fraction(k)) for k, c in p.terms.items()], DEFAULT_BASIS)


def residue_end_coefficient(f: LaurentPolynomial, g: LaurentPolynomial, end: End) -> complex:
    """Coefficient of 1/z in the series expansion of g*f'/f at one end.

    Under z = exp(2*pi*w) the quantity z*f'(z) becomes the exponential
    derivative scaled by 1/(2*pi), so the 1/z coefficient here is the
    exponential engine's constant term divided by 2*pi.
    """
    if f.is_zero():
        raise InputError("series expansion requires a non-zero denominator")
    if g.is_zero():
        return 0j
    return constant_term_A(_exp_image(f), _exp_image(g), end) / TWO_PI


def residue_formula_sum(f: LaurentPolynomial, g: LaurentPolynomial) -> complex:
    """A_n - A_1: the series-engine value of the sum of g over f's roots."""
    a1 = residue_end_coefficient(f, g, End.FIRST)
    an = residue_end_coefficient(f, g, End.LAST)
    return an - a1


def laurent_images(
    f: ExponentialSum, g: ExponentialSum
) -> tuple[LaurentPolynomial, LaurentPolynomial, int]:
    """(F, G, q): the polynomials under w = exp(2*pi*z/q).

    q is the least common denominator of every frequency, so each exponent
    q*a is an integer.  Requires the default rational basis.
    """
    if not f.basis.is_default() or not g.basis.is_default():
        raise InputError("substitution requires the default rational basis")
    if f.is_zero():
        raise InputError("mean value requires a non-zero denominator sum")
    fv = [v for v in f.freq_values()] + [v for v in g.freq_values()]
    q = 1
    for v in fv:
        q = q * v.denominator // math.gcd(q, v.denominator)

    def to_laurent(s: ExponentialSum) -> LaurentPolynomial:
        s = s.to_float_mode()
        terms: dict[int, complex] = {}
        for t in s.terms:
            v = s.basis.value_key(t.freq) * q
            terms[int(v)] = t.coeff
        return LaurentPolynomial(terms)

    return to_laurent(f), to_laurent(g), q


def mean_via_substitution(f: ExponentialSum, g: ExponentialSum) -> complex:
    """Mean value for rational frequencies through the algebraic case.

    Each root of the image polynomial contributes a vertical progression
    of zeros with density 1/q per unit height, so the mean is the root
    sum divided by q.
    """
    F, G, q = laurent_images(f, g)
    if G.is_zero() or F.exponent_span() == 0:
        return 0j
    return sum_over_roots(F, G) / q
