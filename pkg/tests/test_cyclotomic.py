"""Tests for the two independent cyclotomic constructions."""

import pytest

from cyclodiv.arith import delta, divisors, factorize, mobius
from cyclodiv.cyclotomic import (
    MAX_FULL_M,
    _poly_divexact,
    _poly_mul,
    cyclotomic_full,
    cyclotomic_truncated,
)
from cyclodiv.series import binomial_power, ts_mul, ts_one


def naive_truncated(m, order):
    # Direct product over all divisors d <= order, recomputed from scratch.
    out = ts_one(order)
    for d in divisors(factorize(m)):
        if d > order:
            continue
        mu = mobius(factorize(m // d))
        if mu:
            out = ts_mul(out, binomial_power(d, mu, order))
    return out.coeffs


def test_truncated_examples():
    assert cyclotomic_truncated(1, 3).series.coeffs == (1, -1, 0, 0)
    assert cyclotomic_truncated(6, 3).series.coeffs == (1, -1, 1, 0)
    for p in (5, 7, 101):
        r = 3
        assert cyclotomic_truncated(p, r).series.coeffs == (1,) * (r + 1)


def test_truncated_constant_term_is_one():
    for m in (1, 2, 12, 360, 2310, 9699690):
        assert cyclotomic_truncated(m, 6).series.coeffs[0] == 1


def test_truncated_huge_m_is_cheap():
    # only divisors d <= order matter, so m far beyond full-oracle range works
    got = cyclotomic_truncated(10**15, 4).series.coeffs
    assert got == naive_truncated(10**15, 4)


def test_full_examples():
    assert cyclotomic_full(1) == [-1, 1]
    assert cyclotomic_full(2) == [1, 1]
    assert cyclotomic_full(6) == [1, -1, 1]
    assert cyclotomic_full(12) == [1, 0, -1, 0, 1]
    assert cyclotomic_full(105)[7] == -2


def test_full_degree_is_totient():
    def totient(n):
        f = factorize(n)
        t = n
        for p, _ in f.factors:
            t -= t // p
        return t

    for m in (1, 2, 7, 12, 100, 105, 360):
        assert len(cyclotomic_full(m)) - 1 == totient(m)


def test_full_validation():
    with pytest.raises(ValueError):
        cyclotomic_full(0)
    with pytest.raises(ValueError):
        cyclotomic_full(MAX_FULL_M + 1)
    with pytest.raises(ValueError):
        cyclotomic_truncated(0, 3)


def test_truncated_matches_full_sweep():
    # modest sweep here; the acceptance suite drives m <= 2000, r <= 10
    for m in range(1, 301):
        full = cyclotomic_full(m)
        d = delta(m)
        for r in (1, 2, 5, 8):
            got = cyclotomic_truncated(m, r).series.coeffs
            expect = tuple(d * (full[i] if i < len(full) else 0) for i in range(r + 1))
            assert got == expect, m


def test_product_over_divisors_is_xn_minus_1():
    for n in range(1, 61):
        prod = [1]
        for d in divisors(factorize(n)):
            prod = _poly_mul(prod, cyclotomic_full(d))
        expect = [0] * (n + 1)
        expect[0] = -1
        expect[n] = 1
        assert prod == expect, n


def test_truncation_depends_only_on_small_divisors():
    # the truncated series is the naive divisor-product, recomputed in full
    for m in (3, 9, 27, 12, 100, 2310, 4620):
        for order in (1, 2, 4, 6):
            assert cyclotomic_truncated(m, order).series.coeffs == naive_truncated(m, order)
    # m = 9 and m = 3 share {d <= 2} = {1} but carry different mu(m/d) there
    assert cyclotomic_truncated(9, 2).series.coeffs == (1, 0, 0)
    assert cyclotomic_truncated(3, 2).series.coeffs == (1, 1, 1)


def test_poly_divexact_detects_nonzero_remainder():
    # x^2 + 1 does not divide x^3 - 1
    with pytest.raises(ArithmeticError):
        _poly_divexact([-1, 0, 0, 1], [1, 0, 1])


def test_poly_divexact_large_coefficients_fall_back():
    # quotient coefficients beyond the int64 guard still come out exact
    big = 10**30
    q = [big, -3 * big, 7]
    den = [4, 1, 1]
    num = _poly_mul(q, den)
    assert _poly_divexact(num, den) == q
