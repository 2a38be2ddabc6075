import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import changes_of_variable, rationals, series
from fpslab.changevar import (
    Decomposition,
    DerivationTerm,
    SumForm,
    apply_decomposition,
    apply_derivation,
    cbh_check,
    decompose,
    exp_derivation,
    exp_vector_field,
    odd_vanishing_report,
    sum_form,
)
from fpslab.series import PowerSeries, SeriesError, compose, expm1_series, log1p_series, reversion, x_series


def P(*cs, order=None):
    return PowerSeries.from_coeffs(cs, order)


def partitions(n):
    """Multiplicity vectors (i_1, ..., i_n) with sum k * i_k = n."""
    def rec(remaining, largest):
        if remaining == 0:
            yield {}
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - part, part):
                out = dict(rest)
                out[part] = out.get(part, 0) + 1
                yield out
    for p in rec(n, n):
        yield tuple(p.get(k, 0) for k in range(1, n + 1))


def partition_coefficient(mult):
    """Coefficient of x^{n+1} in prod_k (1/i_k!) (x^{k+1} d/dx)^{i_k} x, smallest k applied first."""
    coeff, degree = F(1), 1
    for k, i in enumerate(mult, start=1):
        for _ in range(i):
            coeff *= degree
            degree += k
        coeff /= math.factorial(i)
    return coeff


def brute_force_b(a, n_max):
    """Solve b_n = a_{n+1} - sum over partitions other than (n) of c_p * prod b_k^{i_k}."""
    b = {}
    for n in range(1, n_max + 1):
        total = F(0)
        for mult in partitions(n):
            if mult[n - 1] == 1:
                continue
            term = partition_coefficient(mult)
            for k, i in enumerate(mult, start=1):
                if i:
                    term *= b[k] ** i
            total += term
        b[n] = a[n + 1] - total
    return [b[n] for n in range(1, n_max + 1)]


def test_partition_enumeration_counts():
    assert [len(list(partitions(n))) for n in range(1, 8)] == [1, 2, 3, 5, 7, 11, 15]


def test_apply_derivation_examples():
    assert apply_derivation(1, x_series(3)) == P(0, 0, 1, 0)
    assert apply_derivation(2, P(0, 0, 1, order=5)) == P(0, 0, 0, 0, 2, 0)
    assert apply_derivation(1, expm1_series(4)) == P(0, 0, 1, 1, F(1, 2))


def test_exp_derivation_examples():
    # x / (1 - x/2)
    assert exp_derivation(DerivationTerm(1, F(1, 2)), x_series(3)) == P(0, 1, F(1, 2), F(1, 4))
    g = P(1, 2, 3, 4, order=6)
    assert exp_derivation(DerivationTerm(3, 0), g) == g
    # x / sqrt(1 - 2 x^2)
    assert exp_derivation(DerivationTerm(2, 1), x_series(5)) == P(0, 1, 0, 1, 0, F(3, 2))


def test_derivation_term_validates():
    with pytest.raises(SeriesError):
        DerivationTerm(0, 1)


def test_decompose_identity():
    assert decompose(x_series(8)).terms == (0,) * 7


def test_decompose_exp_scaled_table():
    d = decompose(expm1_series(15))
    expected = {1: F(1, 2), 2: F(-1, 6), 4: F(-1, 20), 6: F(5, 84), 8: F(-7, 24),
                10: F(35, 22), 12: F(-4279, 312), 14: F(3003, 16)}
    assert d.scaled() == tuple(expected.get(n, 0) for n in range(1, 15))


def test_decompose_exp_2x():
    d = decompose(expm1_series(12, 2))
    assert d[1] == 1
    assert all(d[j] == 0 for j in range(3, 12, 2))


def test_decompose_rejects_bad_input():
    with pytest.raises(SeriesError):
        decompose(P(0, 2, 1))
    with pytest.raises(SeriesError):
        decompose(P(1, 1, 1))


@pytest.mark.parametrize("f", [expm1_series(7), P(0, 1, 1, order=7), P(0, 1, F(-2, 3), 5, 0, F(1, 7), 2, -1)])
def test_decompose_matches_partition_sum(f):
    assert list(decompose(f).terms[:6]) == brute_force_b(f.coeffs, 6)


def test_apply_decomposition_examples():
    f = P(0, 1, F(1, 3), -2, F(5, 2), order=8)
    d = decompose(f)
    assert apply_decomposition(d, x_series(8)) == f
    inv = apply_decomposition(decompose(expm1_series(10)), x_series(10), reversed=True, negated=True)
    assert inv == log1p_series(10)
    g = P(F(1, 2), -1, 3, 0, 1, 1, 1, 1, 1)
    forward = apply_decomposition(d, g)
    assert apply_decomposition(d, forward, reversed=True, negated=True) == g


def test_sum_form_examples():
    assert sum_form(x_series(6)).terms == (0,) * 5
    a = sum_form(expm1_series(6))
    assert a[1] == F(1, 2)
    # degree 3: 1/6 = A_2 + A_1^2
    assert a[2] == F(1, 6) - a[1] ** 2 == F(-1, 12)


@pytest.mark.parametrize("f", [expm1_series(20), x_series(20), P(0, 1, 1, order=12)])
def test_cbh_examples(f):
    report = cbh_check(f)
    assert report.passed, report.line()


def test_cbh_reports_mismatch_degree(monkeypatch):
    import fpslab.changevar as cv

    real = cv.sum_form

    def perturbed(f):
        terms = list(real(f).terms)
        terms[2] += 1
        return SumForm(tuple(terms))

    monkeypatch.setattr(cv, "sum_form", perturbed)
    report = cbh_check(expm1_series(6))
    assert not report.passed
    assert report.counterexample["degree"] == 4


def test_odd_vanishing_examples():
    r = odd_vanishing_report(1, 15)
    assert r.passed
    assert list(r.data["even_signs"].values()) == ["-", "+", "-", "+", "-", "+"]
    assert decompose(expm1_series(9, 2))[1] == 1
    r = odd_vanishing_report(F(1, 3), 9)
    assert r.passed and decompose(expm1_series(9, F(1, 3)))[1] == F(1, 6)
    with pytest.raises(SeriesError):
        odd_vanishing_report(0, 5)


def test_decomposition_json_round_trip():
    d = decompose(expm1_series(6))
    assert d.to_json() == {"order": 5, "terms": ["1/2", "-1/12", "0", "-1/480", "0"]}
    assert Decomposition.from_json(d.to_json()) == d
    s = sum_form(expm1_series(5))
    assert SumForm.from_json(s.to_json()) == s


@given(changes_of_variable(max_order=20))
def test_inverse_product_is_reversion(f):
    d = decompose(f)
    assert apply_decomposition(d, x_series(f.order), reversed=True, negated=True) == reversion(f)


@given(st.integers(1, 5), rationals, series(min_order=8, max_order=8), series(min_order=8, max_order=8))
def test_exp_derivation_is_automorphism(j, b, g, h):
    t = DerivationTerm(j, b)
    assert exp_derivation(t, g * h) == exp_derivation(t, g) * exp_derivation(t, h)


@given(changes_of_variable(min_order=2, max_order=10), series(min_order=10, max_order=10))
def test_substitution_property(f, g):
    d = decompose(f)
    g = g.truncate(f.order)
    assert apply_decomposition(d, g) == compose(g, apply_decomposition(d, x_series(f.order)))


@given(changes_of_variable(min_order=2, max_order=12))
def test_cbh_random(f):
    assert cbh_check(f).passed


@given(changes_of_variable(min_order=2, max_order=10), st.permutations(range(9)))
def test_uniqueness_independent_of_evaluation_order(f, perm):
    # any candidate sequence that reproduces f must be decompose(f): solving the
    # triangular system in an arbitrary visiting order with fixed-point sweeps
    n = f.order - 1
    b = [F(0)] * n
    for _ in range(n):
        for idx in perm:
            if idx >= n:
                continue
            partial = apply_decomposition(Decomposition(tuple(b)), x_series(f.order))
            b[idx] += f.coeffs[idx + 2] - partial.coeffs[idx + 2]
    assert tuple(b) == decompose(f).terms
