"""Tests for the Laurent-polynomial oracle and the rational-frequency bridge."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from expmean.errors import InputError
from expmean.laurent import (
    LaurentPolynomial,
    laurent,
    mean_via_substitution,
    residue_end_coefficient,
    residue_formula_sum,
    roots_nonzero,
    sum_over_roots,
)
from expmean.meanvalue import mean_value
from expmean.sums import End, FrequencyBasis, exp_sum, zero_sum

SQRT2 = "1.41421356237309504880168872421"


def random_laurent(rng, span=6, mag=(0.5, 2.0)):
    lo = rng.randint(-3, 0)
    hi = lo + rng.randint(1, span)
    terms = {}
    for k in range(lo, hi + 1):
        if k in (lo, hi) or rng.random() < 0.6:
            r = rng.uniform(*mag)
            phi = rng.uniform(0, 2 * math.pi)
            terms[k] = cmath.rect(r, phi)
    return laurent(terms)


def test_construction_drops_zero_coefficients():
    p = laurent({0: 1, 2: 0, -1: 3})
    assert list(p.terms) == [-1, 0]
    assert p.exponent_span() == 1
    with pytest.raises(InputError):
        laurent({0.5: 1})


def test_roots_quadratic():
    p = laurent({0: 6, 1: -5, 2: 1})
    rs = roots_nonzero(p)
    assert len(rs) == 2
    assert abs(rs[0][0] - 2) < 1e-10 and rs[0][1] == 1
    assert abs(rs[1][0] - 3) < 1e-10 and rs[1][1] == 1


def test_roots_single_negative_exponent():
    p = laurent({0: 1, -1: -1})
    rs = roots_nonzero(p)
    assert len(rs) == 1
    assert abs(rs[0][0] - 1) < 1e-12 and rs[0][1] == 1


def test_roots_monomial_has_none():
    assert roots_nonzero(laurent({2: 1})) == []
    assert roots_nonzero(laurent({-3: 2.5})) == []


def test_roots_double_root_total_multiplicity():
    p = laurent({0: 1, 1: -2, 2: 1})  # (z-1)^2
    rs = roots_nonzero(p)
    assert sum(m for _, m in rs) == 2
    for z, _ in rs:
        assert abs(z - 1) < 1e-6


def test_roots_total_multiplicity_random():
    rng = random.Random(71)
    for _ in range(100):
        p = random_laurent(rng)
        rs = roots_nonzero(p)
        assert sum(m for _, m in rs) == p.exponent_span()


def test_sum_over_roots_examples():
    f = laurent({0: 2, 1: -3, 2: 1})  # roots 1, 2
    assert abs(sum_over_roots(f, laurent({1: 1})) - 3) < 1e-9
    assert abs(sum_over_roots(f, laurent({0: 1})) - 2) < 1e-12
    f2 = laurent({0: -1, 1: 1})
    assert abs(sum_over_roots(f2, laurent({-1: 1})) - 1) < 1e-12


def test_residue_end_coefficients_quadratic():
    f = laurent({0: 2, 1: -3, 2: 1})
    g = laurent({1: 1})
    a1 = residue_end_coefficient(f, g, End.FIRST)
    an = residue_end_coefficient(f, g, End.LAST)
    assert abs(a1) < 1e-12
    assert abs(an - 3) < 1e-12
    assert abs(residue_formula_sum(f, g) - 3) < 1e-12


def test_residue_formula_g_one_counts_roots():
    rng = random.Random(5)
    for _ in range(30):
        f = random_laurent(rng)
        got = residue_formula_sum(f, laurent({0: 1}))
        assert abs(got - f.exponent_span()) < 1e-9


def test_residue_matches_root_sum_random():
    rng = random.Random(2024)
    for _ in range(200):
        f = random_laurent(rng)
        g = random_laurent(rng, span=3)
        direct = sum_over_roots(f, g)
        series = residue_formula_sum(f, g)
        assert abs(series - direct) < 1e-8, (f, g, series, direct)


def test_substitution_examples():
    f = exp_sum([(6, 0), (-5, 1), (1, 2)])
    g = exp_sum([(1, 1)])
    assert abs(mean_via_substitution(f, g) - 5) < 1e-9
    f2 = exp_sum([(1, 0), (1, 1)])
    assert abs(mean_via_substitution(f2, exp_sum([(1, 0)])) - 1) < 1e-12
    f3 = exp_sum([(1, 0), (1, "1/2")])
    assert abs(mean_via_substitution(f3, exp_sum([(1, 0)])) - 0.5) < 1e-12


def test_substitution_rejects_irrational_basis():
    basis = FrequencyBasis(("1", SQRT2))
    f = exp_sum([(1, (0, 0)), (1, (0, 1))], basis)
    with pytest.raises(InputError):
        mean_via_substitution(f, exp_sum([(1, (0, 0))], basis))


def test_substitution_zero_g():
    f = exp_sum([(1, 0), (1, 1)])
    assert mean_via_substitution(f, zero_sum()) == 0


def test_bridge_identity_random():
    # series mean against the root-sum mean on rational frequencies
    rng = random.Random(99)
    for _ in range(50):
        n = rng.randint(2, 4)
        fpairs = []
        for k in rng.sample(range(-6, 7), n):
            r = rng.uniform(0.5, 2.0)
            fpairs.append((cmath.rect(r, rng.uniform(0, 2 * math.pi)), Fraction(k, 2)))
        gpairs = []
        for k in rng.sample(range(-4, 5), rng.randint(1, 3)):
            r = rng.uniform(0.5, 2.0)
            gpairs.append((cmath.rect(r, rng.uniform(0, 2 * math.pi)), Fraction(k, 2)))
        f = exp_sum(fpairs)
        g = exp_sum(gpairs)
        lhs = mean_value(f, g).mean
        rhs = mean_via_substitution(f, g)
        assert abs(lhs - rhs) < 1e-9, (f, g, lhs, rhs)
