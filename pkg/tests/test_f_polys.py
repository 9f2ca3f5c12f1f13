import math
from fractions import Fraction

import pytest

from ptmpow.core_arith import IntPoly, nu2
from ptmpow.f_polys import (
    CoeffTable,
    FSeries,
    check_addition_formula,
    check_g_factorization,
    f_poly,
    f_poly_alt1,
    f_poly_alt2,
    g_prefix_alt1,
    g_prefix_alt2,
    log_coeff,
    log_coeff_base,
    log_series_oracle,
    product_series_oracle,
    shared_fseries,
    w_poly,
)
from ptmpow.tm_sequences import tm

# n!*f_n for n = 0..5, coefficients by increasing degree
G_TABLE = [
    (1,),
    (0, -1),
    (0, -3, 1),
    (0, -2, 9, -1),
    (0, -42, 35, -18, 1),
    (0, -24, 270, -155, 30, -1),
]


def test_first_six_polynomials():
    fs = shared_fseries()
    for n, coeffs in enumerate(G_TABLE):
        fp = fs.f(n)
        assert fp.num == IntPoly(coeffs)
        assert fp.fact_index == n


def test_alternative_recurrences_agree():
    fs = FSeries()
    a1 = g_prefix_alt1(40)
    a2 = g_prefix_alt2(40)
    for n in range(41):
        assert a1[n] == a2[n] == fs.g(n)
    assert f_poly_alt1(1).num == f_poly_alt2(1).num == IntPoly((0, -1))
    assert f_poly_alt1(0).num == IntPoly((1,))


def test_degree_and_leading_coefficient():
    fs = shared_fseries()
    for n in range(201):
        g = fs.g(n)
        assert g.degree == n
        assert g.coeffs[-1] == (-1) ** n


def test_coefficient_table_closed_forms():
    tab = CoeffTable()
    for n in range(31):
        assert tab.a(n, n) == Fraction((-1) ** n, math.factorial(n))
    assert tab.a(0, 7) == 0
    for n in range(2, 101):
        assert tab.a(n - 1, n) == Fraction((-1) ** (n + 1) * 3,
                                           2 * math.factorial(n - 2))
    for n in range(3, 101):
        assert tab.a(n - 2, n) == Fraction((-1) ** n * (27 * n - 73),
                                           24 * math.factorial(n - 3))
    for n in range(1, 1001):
        assert tab.a(1, n) == Fraction(1 - 2 ** (nu2(n) + 1), n)
    with pytest.raises(ValueError):
        tab.a(5, 4)


def test_coefficient_table_matches_polynomials():
    fs = shared_fseries()
    tab = CoeffTable()
    for n in range(41):
        fp = fs.f(n)
        for i in range(n + 1):
            assert tab.a(i, n) == fp.coefficient(i)


def test_w_polynomials_match_factored_forms():
    n = IntPoly.x()
    expected = {
        3: 45 * (9 * n**2 - 73 * n + IntPoly((176,))),
        4: 7 * (1215 * n**3 - 19710 * n**2 + 121685 * n - IntPoly((266398,))),
        5: 945 * (243 * n**4 - 6570 * n**3 + 74165 * n**2 - 394878 * n
                  + IntPoly((805440,))),
        6: 165 * (45927 * n**5 - 1862595 * n**4 + 33070275 * n**3
                  - 310359581 * n**2 + 1497391014 * n - IntPoly((2916611728,))),
    }
    for k, want in expected.items():
        assert w_poly(k) == want
    with pytest.raises(ValueError):
        w_poly(2)
    # beyond k = 6 there is no factored form to pin; the construction still
    # interpolates to an integer polynomial and survives its extra samples
    assert w_poly(7).degree == 6


def test_g_factorization_examples():
    fs = shared_fseries()
    # hand case: g_2 = t^2 - 3t == (t - t^2) * 1 (mod 2)
    assert fs.g(2).mod(2) == (IntPoly.x() - IntPoly.monomial(2)).mod(2)
    for p in (2, 3, 5, 7, 11, 13):
        assert check_g_factorization(p, p, fs).ok
    for n in range(31):
        for p in (2, 3, 5):
            assert check_g_factorization(n, p, fs).ok


def test_addition_formula():
    fs = shared_fseries()
    for n in range(1, 31):
        assert fs.f_value(n, 0) == 0  # t1 = 1, t2 = -1 collapses to f_n(0)
        assert check_addition_formula(n, 1, -1, fs).ok
        assert check_addition_formula(n, 2, 3, fs).ok
    for n in range(51):
        assert fs.f_value(n, 2) == tm(2, n)
    # evaluation bridge: f_n at positive integers is t_m
    for m in range(1, 6):
        for n in range(41):
            assert fs.f_value(n, m) == tm(m, n)


def test_log_coefficients():
    # (1 - 2^(nu2(n)+1)) / n; the series oracle below pins the same values
    assert log_coeff(1) == Fraction(1 - 2, 1) == -1
    assert log_coeff(2) == Fraction(1 - 4, 2) == Fraction(-3, 2)
    # base k needs the geometric-sum denominator (k-1)*n; hand expansion of
    # log(1-x) + log(1-x^3) puts -1/3 - 1 = -4/3 on x^3
    assert log_coeff_base(3, 3) == Fraction(1 - 9, 2 * 3) == Fraction(-4, 3)
    assert log_coeff_base(2, 2) == log_coeff(2)
    oracle = log_series_oracle(64)
    for n in range(1, 65):
        assert oracle[n] == log_coeff(n)
    oracle3 = log_series_oracle(64, base=3)
    for n in range(1, 65):
        assert oracle3[n] == log_coeff_base(3, n)


def test_truncated_product_oracle():
    fs = shared_fseries()
    for t0 in range(-3, 4):
        series = product_series_oracle(t0, 64)
        vals = fs.value_prefix(t0, 64)
        assert series == vals
        for n in range(65):
            assert fs.f_value(n, t0) == series[n]


def test_value_prefix_matches_polynomial_evaluation():
    fs = shared_fseries()
    vals = fs.value_prefix(5, 30)
    for n in range(31):
        assert fs.f_value(n, 5) == vals[n]


def test_fact_poly_format():
    assert f_poly(2).format("t") == "(-3*t + 1*t^2)/2!"
