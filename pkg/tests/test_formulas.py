from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from skelpf import formulas as fm
from skelpf.errors import DomainError
from skelpf.graph import complete, complete_ab, complete_bipartite_ab
from skelpf.ideals import dim_quotient, kpolynomial_check, skeleton_ideal
from skelpf.parking import count_lambda_pf, enumerate_spf


def test_steck_examples():
    assert fm.steck_det((3, 2, 1)) == Fraction(8, 3)
    assert fm.lambda_pf_count_steck((3, 2, 1)) == 16
    assert fm.lambda_pf_count_steck((1, 1)) == 1
    assert fm.lambda_pf_count_steck((2, 2)) == 4


def test_steck_matrix_shape():
    M = fm.steck_matrix((3, 2, 1))
    assert M[0] == [1, Fraction(1, 2), Fraction(1, 6)]
    assert M[2][0] == 0
    assert M[1][0] == 1


def test_steck_rejects_increasing():
    with pytest.raises(DomainError):
        fm.steck_det((1, 2))


@given(st.lists(st.integers(0, 7), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_steck_counts_lambda_pf(raw):
    lam = tuple(sorted(raw, reverse=True))
    assert fm.lambda_pf_count_steck(lam) == count_lambda_pf(lam)


def test_rational_det():
    assert fm.rational_det([[Fraction(1, 2), 1], [1, 4]]) == 1
    assert fm.rational_det([[0, 1], [1, 0]]) == -1
    assert fm.rational_det([[1, 1], [1, 1]]) == 0


def test_f_g_examples():
    b, x = 3, Fraction(5, 7)
    assert fm.f_poly_eval(2, b, x) == x * (x + 2 * b) / 2
    assert fm.g_poly_eval(3, 1, 1, 2) * 6 == 20
    for n in range(3, 8):
        for xv in (Fraction(1, 3), 2, 5):
            assert fm.g_poly_eval(n, 1, 2, xv) == Fraction(xv) ** (n - 1) * (xv + n * 2) / fm.factorial(n)


def test_f_g_ranges():
    with pytest.raises(DomainError):
        fm.f_poly_eval(0, 1, 1)
    with pytest.raises(DomainError):
        fm.g_poly_eval(3, 2, 1, 1)


def test_polynomials_match_determinants():
    for n in range(1, 7):
        for b in (1, 2, 3):
            for x in (Fraction(1, 2), Fraction(-3, 5), 4):
                assert fm.f_poly_det(n, b, x) == fm.f_poly_eval(n, b, x)
                for k in range(1, n - 1):
                    assert fm.g_poly_det(n, k, b, x) == fm.g_poly_eval(n, k, b, x)
                if n >= 3:
                    assert fm.g_poly_eval(n, n - 2, b, x) == fm.g_top_closed(n, b, x)


def test_dim_examples():
    assert fm.dim_skeleton_closed(3, 1, 1, 1) == 20
    assert fm.dim_skeleton_closed(2, 0, 1, 1) == 4
    for n in range(2, 7):
        for a in (1, 2, 3):
            for b in (1, 2):
                assert fm.dim_skeleton_closed(n, n - 2, a, b) == a * (a + n * b) ** (n - 1) + (n - 1) ** (n - 1) * b ** n


def test_dim_ranges():
    with pytest.raises(DomainError):
        fm.dim_skeleton_closed(3, 3)
    with pytest.raises(DomainError):
        fm.dim_skeleton_closed(3, 1, 0, 1)


def test_dim_matches_enumeration():
    for n in range(1, 5):
        for a in (1, 2):
            for b in (1, 3):
                for k in range(n):
                    assert fm.dim_skeleton_closed(n, k, a, b) == dim_quotient(skeleton_ideal(complete_ab(n, a, b), k))


def test_dim_is_lambda_count():
    for n in range(1, 5):
        for k in range(n):
            lam = fm.skeleton_lambda(n, k, 2, 1)
            assert fm.lambda_pf_count_steck(lam) == fm.dim_skeleton_closed(n, k, 2, 1)


def test_isolated_subsets_weight_zero():
    for n in range(2, 7):
        J = fm.isolated_subsets(n, 1, 1)
        assert [j.elements for j in J] == [(1,), (2,)]
        assert fm.betti_total(n, 1, 1) == comb(n + 1, 2)


def test_isolated_subset_data():
    J = fm.IsolatedSubset((1, 4), 2, 5, 2)
    assert J.dual_weight == 1 + (4 - 3)
    assert J.multiplicity() == comb(4 - 1 - 1, 2 - 1)
    assert J.multidegree() == (5, 3, 3, 3, 0)
    assert J.orbit_size() == 20
    assert fm.betti_multidegree(J) == ((5, 3, 3, 3, 0), 2)


def test_isolated_subsets_empty_beyond_top():
    assert fm.isolated_subsets(3, 1, 5) == []


def test_betti_small():
    assert fm.betti_total(3, 1, 1) == 6 == len(skeleton_ideal(complete(3), 1))
    assert fm.betti_total(3, 1, 2) == 8
    assert fm.betti_total(3, 1, 3) == 3


def test_betti_table_closes_hilbert_series():
    for n in range(1, 5):
        for k in range(n):
            table = fm.betti_table(n, k)
            I = skeleton_ideal(complete(n), k)
            assert kpolynomial_check(I, table)
            # one entry off by one must break it
            i, b, beta = table[-1]
            assert not kpolynomial_check(I, table[:-1] + [(i, b, beta + 1)])


def test_betti_euler_characteristic():
    for n in range(2, 8):
        for k in range(n):
            alt = sum((-1) ** (i - 1) * fm.betti_total(n, k, i) for i in range(1, n + 1))
            assert alt == 1


def test_betti_k1_and_top_closed_forms():
    for n in range(2, 8):
        for i in range(1, n + 1):
            assert fm.betti_total(n, 1, i) == i * comb(n + 1, i + 1)
            if n >= 3:
                assert fm.betti_total(n, n - 2, i) == fm.betti_top_closed(n, i)


def test_beta0_is_generator_count():
    for n in range(1, 7):
        for k in range(n):
            assert fm.betti_total(n, k, 1) == len(skeleton_ideal(complete(n), k))


def test_gamma_pairs():
    pairs = list(fm.gamma_pairs(1, 1, 2))
    assert pairs == [((0, 1), (1, 1)), ((1, 1), (0, 1))]
    for s, t in fm.gamma_pairs(2, 3, 3):
        sums = [x + y for x, y in zip(s, t)]
        assert sums == sorted(set(sums)) and sums[-1] == 5


def test_bipartite_counts():
    assert fm.spf_bipartite_count(1, 1) == 1
    assert enumerate_spf(complete_bipartite_ab(1, 1)) == [(0, 1)]
    for m in range(1, 5):
        for n in range(1, 5):
            assert fm.spf_bipartite_count(m, n) == fm.spf_bipartite_count(n, m)
    for total in range(2, 7):
        for m in range(1, total):
            n = total - m
            assert fm.spf_bipartite_count(m, n) == len(enumerate_spf(complete_bipartite_ab(m, n)))
    with pytest.raises(DomainError):
        fm.spf_bipartite_count(0, 2)


def test_identity_checks():
    reports = fm.identity_checks(4, 1, 1)
    assert all(r["pass"] for r in reports)
    assert reports[0]["lhs"] == reports[0]["rhs"] == "152"
    assert any(r["lhs"] == "12" for r in reports)
    assert all(r["pass"] for r in fm.identity_checks(3, 2, 5))
    assert fm.un_prime_count(4) == 12
    with pytest.raises(DomainError):
        fm.identity_checks(1, 1, 1)
