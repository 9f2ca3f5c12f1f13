import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptmpow.core_arith import IntPoly, nu2
from ptmpow.f_polys import shared_fseries
from ptmpow.bm_sequences import (
    b1,
    b1_oracle,
    b1_prefix,
    bm,
    bm_alt_prefix,
    bm_cache,
    bm_oracle,
    check_4div,
    check_8x1,
    check_annihilation,
    check_bm_monotone,
    check_congrup,
    check_formula_2k,
    check_g1_closed_forms,
    check_h12,
    check_h_identity,
    check_h_mod_p,
    check_parity_b,
    check_ptm_inverse,
    check_radical,
    check_rps,
    check_derivative_identity,
    check_window_sum_congruences,
    check_turan_b,
    h_poly,
    palindromic_decompose,
    b2_valuation_table_suite,
    v2_b1_churchhouse,
    v2_b2k1_closed,
    v2_b2k1_reduced,
    v_operator,
)


def test_b1_values_and_oracle():
    assert b1(0) == 1 and b1(1) == 1
    assert b1(2) == 2
    assert b1(8) == 10
    for n in range(201):
        assert b1(n) == b1_oracle(n)


def test_bm_seeds_and_small_values():
    assert bm(3, 1) == 3
    assert bm(2, 2) == 5
    assert bm(2, 3) == 8
    assert bm(4, -1) == 0
    with pytest.raises(ValueError):
        bm(0, 3)


def test_bm_three_routes_agree():
    for m in range(1, 5):
        alt = bm_alt_prefix(m, 40)
        for n in range(41):
            assert bm(m, n) == alt[n] == bm_oracle(m, n)


def test_bm_1_matches_b1():
    vals = bm_cache(1).prefix(10**5)
    euler = b1_prefix(10**5)
    assert vals[: 10**5 + 1] == euler[: 10**5 + 1]


def test_f_at_negative_integers_is_bm():
    fs = shared_fseries()
    for m in range(1, 5):
        for n in range(41):
            assert fs.f_value(n, -m) == bm(m, n)


def test_turan_identities():
    # hand instance: b(2)^2 - b(1) b(3) = 4 - 2 = b(2) b(1)
    assert b1(2) ** 2 - b1(1) * b1(3) == b1(2) * b1(1) == 2
    # hand instance for m=2 at n=1: b_2(2)^2 - b_2(1) b_2(3) = (b_2(0)+b_2(1))^2
    assert bm(2, 2) ** 2 - bm(2, 1) * bm(2, 3) == (bm(2, 0) + bm(2, 1)) ** 2 == 9
    assert check_turan_b(1, 1 << 12).ok
    rep = check_turan_b(2, 1 << 12)
    assert rep.ok
    assert rep.witness["negativity_violations"] == 0


def test_b2_odd_identity_uses_shifted_partial_sum():
    # at n = 1 the identity only balances with the partial sum stopping at
    # n - 1; the same display with the sum through n misses by 8
    lhs = bm(2, 1) ** 2 - bm(2, 0) * bm(2, 2)
    assert lhs == bm(2, 0) ** 2 - bm(2, 0) * bm(2, 1)
    assert lhs != (bm(2, 0) + bm(2, 1)) ** 2 - bm(2, 0) * bm(2, 1)


def test_parity_congruences():
    assert bm(2, 2) % 8 == 5  # C(2,2) + 4*C(0,0)
    assert check_parity_b(2, 1 << 12).ok
    assert check_parity_b(3, 1 << 12).ok
    assert check_parity_b(4, 1 << 12).ok
    assert check_parity_b(6, 1 << 10).ok


def test_churchhouse_formula():
    assert v2_b1_churchhouse(2) == 1
    assert v2_b1_churchhouse(4) == 2
    assert v2_b1_churchhouse(5) == 2
    vals = b1_prefix(1 << 12)
    for n in range(2, (1 << 12) + 1):
        assert v2_b1_churchhouse(n) == nu2(vals[n])


def test_v2_b2k1_piecewise():
    for k in (1, 2, 3):
        vals = bm_cache((1 << k) - 1).prefix(1 << 12)
        for n in range(1 << 12):
            got = nu2(vals[n])
            assert got == v2_b2k1_closed(k, n) == v2_b2k1_reduced(k, n)
            assert got in (0, 1, 2)
            assert (got == 0) == (n <= (1 << k) - 1)
            assert vals[n] % 16 != 0
    # the second block of residues pins the value 1
    assert v2_b2k1_closed(2, 4) == 1 and v2_b2k1_closed(2, 7) == 1


def test_h_anchor_polynomials():
    assert h_poly(0, 0, 7) == IntPoly.one()
    assert h_poly(0, 2, 2) == IntPoly((1, 10, 5))
    assert h_poly(2, 2, 2) == IntPoly((5, 10, 1))
    assert h_poly(1, 1, 2) == IntPoly((2,))
    assert h_poly(3, 2, 2) == 8 * IntPoly((1, 1))
    assert h_poly(1, 2, 4) == 4 * IntPoly((1, 3)) * IntPoly((1, 33, 27, 3))
    with pytest.raises(ValueError):
        h_poly(4, 2, 2)


def test_h_defining_identity():
    for k in range(4):
        for i in range(1 << k):
            for m in range(1, 7):
                assert check_h_identity(i, k, m, order=256).ok
    # deep residues of the kind the valuation table relies on
    for i, k in ((5, 3), (17, 5), (78, 8), (180, 8)):
        assert check_h_identity(i, k, 2).ok


def test_h_mod_p_reductions():
    assert check_h_mod_p(3, 1, 1).ok
    rep = check_h_mod_p(3, 1, 2)
    assert rep.ok  # m = 3 (mod 4) branch
    for p, s in ((5, 1), (13, 1), (3, 2)):
        rep = check_h_mod_p(p, s, 2)
        assert rep.ok
        # m = p^s = 1 (mod 4): the exact polynomial matches the exponents
        # derived in the proof, (m-1)/4 and (5m-1)/4
        assert rep.witness["h12_matches"] == "proof-form"
    # and explicitly: h_{1,2,5} mod 5 is x + x^6
    got = h_poly(1, 2, 5).mod(5)
    assert got == (IntPoly.monomial(1) + IntPoly.monomial(6)).mod(5)


def test_congruence_families_for_prime_powers():
    assert check_congrup(3, 1, 1 << 10).ok
    assert check_congrup(3, 1, 1 << 10).checked > 0
    assert check_congrup(5, 1, 1 << 9).ok
    assert check_congrup(3, 2, 1 << 8).ok
    assert check_congrup(7, 1, 1 << 8).ok


def test_derivative_identity_and_divisibility():
    assert 2 * bm(2, 2) == 2 * (2 * b1(2) * 1 + 1 * b1(1) * bm(1, 1))
    assert bm(3, 2) % 3 == 0
    for m in (2, 3, 6):
        assert check_derivative_identity(m, 1 << 10).ok


def test_rps_congruences():
    assert check_rps(1, 3, 1, 1 << 10).ok
    assert check_rps(2, 3, 1, 1 << 10).ok
    assert check_rps(1, 5, 1, 1 << 9).ok
    assert check_rps(1, 3, 2, 1 << 9).ok
    assert check_radical(6, 1 << 10).ok
    assert check_radical(12, 1 << 9).ok


def test_window_sum_congruences():
    assert check_window_sum_congruences(1 << 10).ok
    assert h_poly(2, 2, 2).mod(5) == IntPoly.monomial(2)


def test_8x1_divisibility_and_palindromes():
    assert check_8x1(5).ok
    assert check_h12(5).ok
    assert check_4div(64).ok
    from ptmpow.core_arith import binom
    assert binom(4, 2) - binom(2, 1) == 4
    s, coeffs = palindromic_decompose(IntPoly((1, 2, 1)))
    assert s == 0 and coeffs[0] == 1
    with pytest.raises(ValueError):
        palindromic_decompose(IntPoly((1, 2, 3)))


@settings(max_examples=50)
@given(st.integers(0, 3),
       st.lists(st.integers(-50, 50), min_size=1, max_size=6))
def test_palindromic_decompose_roundtrip(s, coeffs):
    d = s + 2 * (len(coeffs) - 1)
    p = IntPoly.zero()
    for j, a in enumerate(coeffs):
        p = p + IntPoly.monomial(s + j, a) * IntPoly((1, 1)) ** (d - s - 2 * j)
    if p.is_zero():
        return
    s2, got = palindromic_decompose(p)
    rebuilt = IntPoly.zero()
    for j, a in enumerate(got):
        rebuilt = rebuilt + IntPoly.monomial(s2 + j, a) * IntPoly((1, 1)) ** (p.degree - s2 - 2 * j)
    assert rebuilt == p


def test_shift_operators():
    v1 = v_operator(1)
    assert [c.coeffs for c in v1.coeffs] == [(-1,), (2,), (-1, 1)]
    # seeds of the order-2 recurrence h_m = 2 h_{m-1} + (x-1) h_{m-2}
    assert h_poly(0, 1, 0) == IntPoly.one() and h_poly(0, 1, 1) == IntPoly.one()
    assert h_poly(1, 1, 0) == IntPoly.zero() and h_poly(1, 1, 1) == IntPoly.one()
    for i in (0, 1):
        assert check_annihilation(i, 1, 40).ok
    v2 = v_operator(2)
    assert v2.order == 4
    for i in range(4):
        assert check_annihilation(i, 2, 12).ok
    v3 = v_operator(3)
    assert v3.order == 8
    assert check_annihilation(0, 3, 10).ok


def test_operator_factor_order_commutes():
    # build V_2 with the two factors swapped; the result must agree
    from ptmpow.core_arith import SqrtPoly
    from ptmpow.bm_sequences import _operator_product_sqrt

    prev = v_operator(1)
    plus = SqrtPoly.from_coeffs((1, 1))
    minus = SqrtPoly.from_coeffs((1, -1))
    a = [SqrtPoly.subst_sqrt(c) * plus ** (j * 2) for j, c in enumerate(prev.coeffs)]
    b = [SqrtPoly.subst_sqrt(c).sign_flip() * minus ** (j * 2)
         for j, c in enumerate(prev.coeffs)]
    swapped = [p.even_part() for p in _operator_product_sqrt(b, a)]
    assert tuple(swapped) == v_operator(2).coeffs


def test_g1_series_closed_forms():
    assert check_g1_closed_forms(order=12).ok


def test_b2_valuation_table():
    assert nu2(bm(2, 3)) == 3
    assert nu2(bm(2, 5)) == 3
    assert nu2(bm(2, 78)) == 7
    assert b2_valuation_table_suite(1 << 12).ok


def test_inverse_and_color_drop_identities():
    assert check_ptm_inverse(10**4).ok
    for k in (1, 2, 3):
        assert check_formula_2k(k, 1 << 10).ok


def test_bm_monotone_in_colors():
    assert check_bm_monotone(6, 1 << 10).ok
