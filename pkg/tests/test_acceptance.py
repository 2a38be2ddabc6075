"""Acceptance criteria.  All comparisons are exact rational equality.

Run with ``pytest tests/test_acceptance.py`` (a PASS/FAIL line per criterion
is printed in the terminal summary) or directly as a script.
"""
import math
import random
from fractions import Fraction as F

from fpslab import known_values
from fpslab.bernoulli import (
    QLookup,
    QRecursion,
    bernoulli_numbers,
    bernoulli_polynomial_value,
    convolution_check,
    divisibility_check,
    expansion_polynomial,
    q_recursive,
    q_series,
    weighted_convolution_check,
)
from fpslab.changevar import apply_decomposition, cbh_check, decompose, odd_vanishing_report
from fpslab.jacobi import (
    CoefficientQuery,
    ResidueOracle,
    coefficient_table,
    commutator_coefficient,
    residue_formula,
)
from fpslab.sampling import random_change_of_variable, random_series
from fpslab.series import (
    PowerSeries,
    compose,
    exp_series,
    expm1_series,
    log1p_series,
    log_series,
    mul,
    reciprocal,
    reversion,
    x_series,
)

RESULTS: list[str] = []


def record(number, name, ok, note=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {name}"
    if note:
        line += f" ({note})"
    RESULTS.append(line)
    assert ok, line


def test_01_scaled_b_table():
    d = decompose(expm1_series(15))
    got = d.scaled()
    expected = tuple(known_values.SCALED_B_EXP.get(n, F(0)) for n in range(1, 15))
    record(1, "n!*b_n table for e^x - 1 at order 15", got == expected)


def test_02_inverse_product():
    f = expm1_series(30)
    star = apply_decomposition(decompose(f), x_series(30), reversed=True, negated=True)
    log_ok = star == log1p_series(30)
    rng = random.Random(2)
    rand_ok = True
    for _ in range(20):
        g = random_change_of_variable(rng, 20)
        s = apply_decomposition(decompose(g), x_series(20), reversed=True, negated=True)
        rand_ok &= s == reversion(g)
    record(2, "reversed negated product = log(1+x) (order 30) and = reversion (20 random, order 20)",
           log_ok and rand_ok)


def test_03_cbh_equivalence():
    rng = random.Random(3)
    fs = [expm1_series(20), expm1_series(20, 2), PowerSeries.from_coeffs([0, 1, 1], 20)]
    fs += [random_change_of_variable(rng, 20) for _ in range(5)]
    reports = [cbh_check(f) for f in fs]
    record(3, "product form and sum form reproduce f through order 20 (8 series)", all(reports))


def test_04_odd_vanishing():
    ok = True
    signs = None
    for a in (F(1), F(2), F(1, 3), F(-1)):
        r = odd_vanishing_report(a, 31)
        d = decompose(expm1_series(31, a))
        ok &= r.passed and d[1] == a / 2 and all(d[j] == 0 for j in range(3, 30, 2))
        if a == 1:
            signs = r.data["even_signs"]
            assert list(signs) == [f"b_{2 * n}" for n in range(2, 16)]
    alternating = all(p != q for p, q in zip(list(signs.values()), list(signs.values())[1:]))
    note = "b_4..b_30 signs " + "".join(signs.values())
    note += ", alternating (reported only)" if alternating else ", not alternating (reported only)"
    record(4, "b_1 = a/2, odd b_j = 0 for j in (1, 29], a in {1, 2, 1/3, -1}", ok, note)


def test_05_recursion_oracle():
    solver = QRecursion()
    ok = all(q_recursive(n, 24, solver) == q_series(1, n, -n + 24) for n in range(-8, 13))
    record(5, "recursion = direct expansion for n in [-8, 12], j <= 24", ok)


def test_06_expansion_table():
    lookup = QLookup()
    ok = all(expansion_polynomial(j, lookup) == p
             for j, p in enumerate(known_values.EXPANSION_POLYNOMIALS))
    record(6, "interpolated polynomials j = 0..5 equal the published expansion", ok)


def test_07_polynomiality_divisibility():
    lookup = QLookup()
    ok = all(expansion_polynomial(j, lookup).degree <= j for j in range(0, 13))
    ok &= all(divisibility_check(j, lookup) for j in range(1, 13))
    record(7, "degree <= j and forced roots for j <= 12", ok)


def test_08_convolutions():
    lookup = QLookup()
    conv = all(convolution_check(m, n, j, lookup)
               for m in range(-6, 7) for n in range(-6, 7) for j in range(-6, 7))
    weighted = all(weighted_convolution_check(m, n, lookup)
                   for m in range(-8, 9) for n in range(-8, 9))
    record(8, "convolution on [-6..6]^3 and weighted convolution on [-8..8]^2", conv and weighted)


def test_09_residues():
    oracle = ResidueOracle()
    cases = [(m, n) for m in range(-12, 13) for n in range(1, 13)]
    ok = len(cases) == 300 and all(residue_formula(m, n) == oracle(m, n) for m, n in cases)
    record(9, "residue closed form = direct expansion on 300 cases", ok)


def test_10_commutator_coefficients():
    oracle = ResidueOracle()
    ok = True
    count = 0
    for w in range(0, 5):
        for n in range(-2, 3):
            table = coefficient_table(w, n, range(-6, 7), range(n, n + 9))
            for j, k, v in table.rows:
                count += 1
                ok &= v == oracle(w - j, k - n + 1)
            ok &= all(commutator_coefficient(CoefficientQuery(w, j, k, n)) == 0
                      for j in range(-6, 7) for k in range(n - 5, n))
    record(10, "table entries = residues, zero for k < n", ok and count == 2925, f"{count} entries")


def test_11_bernoulli_consistency():
    table = bernoulli_numbers(24)
    q11 = q_series(1, 1, 23)
    ok = all(table[j] == math.factorial(j) * q11[j - 1] for j in range(25))
    ok &= table[1] == F(1, 2)
    ok &= all(table[j] == 0 for j in range(3, 24, 2))
    ok &= all(bernoulli_polynomial_value(j, 1) == table[j] for j in range(25))
    record(11, "B_j = j! q^(1,1)_(j-1), B_1 = 1/2, odd B_j = 0, B_j(1) = B_j", ok)


def test_12_series_kernel_properties():
    rng = random.Random(12)
    rev = exp_log = trunc = True
    for _ in range(100):
        f = random_change_of_variable(rng, rng.randint(1, 32))
        g = reversion(f)
        x = x_series(f.order)
        rev &= compose(f, g) == x and compose(g, f) == x
    for _ in range(100):
        a = random_series(rng, rng.randint(1, 32))
        a0 = PowerSeries((F(0),) + a.coeffs[1:])
        a1 = PowerSeries((F(1),) + a.coeffs[1:])
        exp_log &= log_series(exp_series(a0)) == a0 and exp_series(log_series(a1)) == a1
    for _ in range(100):
        high = rng.randint(2, 32)
        low = rng.randint(1, high)
        f = random_change_of_variable(rng, high)
        h = random_series(rng, high)
        h = PowerSeries((F(1),) + h.coeffs[1:])
        fl, hl = f.truncate(low), h.truncate(low)
        trunc &= (mul(f, h).truncate(low) == mul(fl, hl)
                  and compose(h, f).truncate(low) == compose(hl, fl)
                  and reciprocal(h).truncate(low) == reciprocal(hl)
                  and reversion(f).truncate(low) == reversion(fl)
                  and log_series(h).truncate(low) == log_series(hl))
    record(12, "reversion, exp/log round trips and truncation soundness (100 cases each, order <= 32)",
           rev and exp_log and trunc)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    print("\n".join(RESULTS))
    raise SystemExit(1 if failed else 0)
