"""The full identity suite behind ``fpslab verify``.

Every random case is drawn from a fixed seed, so repeated runs produce the
same report.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable

from . import known_values
from .bernoulli import (
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
from .changevar import apply_decomposition, cbh_check, decompose, inverse_check, odd_vanishing_report
from .jacobi import ResidueOracle, commutator_check, residue_check
from .reports import CheckReport
from .sampling import random_change_of_variable, random_series
from .series import (
    PowerSeries,
    compose,
    exp_series,
    expm1_series,
    format_rational,
    log1p_series,
    log_series,
    mul,
    reciprocal,
    reversion,
    x_series,
)

SUITES = ("series", "changevar", "bernoulli", "jacobi")
SEED = 20240601


def _first_failure(name: str, reports) -> CheckReport:
    count = 0
    for r in reports:
        count += 1
        if not r:
            return CheckReport(name, False, r.detail or r.name, counterexample=r.counterexample)
    return CheckReport(name, True, f"{count} cases")


def series_checks(max_order: int) -> list[CheckReport]:
    rng = random.Random(SEED)
    out = []

    def reversion_cases():
        for _ in range(100):
            order = rng.randint(1, max_order)
            f = random_change_of_variable(rng, order)
            g = reversion(f)
            x = x_series(order)
            ok = compose(f, g) == x and compose(g, f) == x
            yield CheckReport("reversion", ok, counterexample=None if ok else {"f": f.to_json()})

    def exp_log_cases():
        for _ in range(100):
            order = rng.randint(1, max_order)
            a = random_series(rng, order)
            a0 = PowerSeries((Fraction(0),) + a.coeffs[1:])
            b = PowerSeries((Fraction(1),) + a.coeffs[1:])
            ok = log_series(exp_series(a0)) == a0 and exp_series(log_series(b)) == b
            yield CheckReport("exp-log", ok, counterexample=None if ok else {"a": a.to_json()})

    def truncation_cases():
        for _ in range(100):
            low = rng.randint(1, max_order)
            high = rng.randint(low, max_order + 4)
            f = random_change_of_variable(rng, high)
            h = random_series(rng, high)
            h = PowerSeries((h.coeffs[0] or Fraction(1),) + h.coeffs[1:])
            fl, hl = f.truncate(low), h.truncate(low)
            pairs = [
                (mul(f, h).truncate(low), mul(fl, hl)),
                (compose(h, f).truncate(low), compose(hl, fl)),
                (reciprocal(h).truncate(low), reciprocal(hl)),
                (reversion(f).truncate(low), reversion(fl)),
                (exp_series(f).truncate(low), exp_series(fl)),
            ]
            ok = all(p == q for p, q in pairs)
            yield CheckReport("truncation", ok,
                              counterexample=None if ok else {"low": low, "high": high})

    out.append(_first_failure("series: reversion round trip", reversion_cases()))
    out.append(_first_failure("series: exp/log round trip", exp_log_cases()))
    out.append(_first_failure("series: truncation soundness", truncation_cases()))
    return out


def scaled_b_table_check(order: int = 15) -> CheckReport:
    d = decompose(expm1_series(order))
    for n, v in enumerate(d.scaled(), start=1):
        expected = known_values.SCALED_B_EXP.get(n, Fraction(0))
        if v != expected:
            return CheckReport("changevar: n!*b_n table for e^x - 1", False,
                               counterexample={"n": n, "expected": format_rational(expected),
                                               "got": format_rational(v)})
    return CheckReport("changevar: n!*b_n table for e^x - 1", True, f"n = 1..{d.order}")


def changevar_checks(max_order: int) -> list[CheckReport]:
    rng = random.Random(SEED + 1)
    out = [scaled_b_table_check()]

    f = expm1_series(max(max_order, 30))
    star_d = decompose(f)
    star = apply_decomposition(star_d, x_series(f.order), reversed=True, negated=True)
    out.append(CheckReport(f"changevar: inverse product is log(1+x) (order {f.order})",
                           star == log1p_series(f.order)))
    out.append(_first_failure(
        "changevar: inverse product equals reversion",
        (inverse_check(random_change_of_variable(rng, max_order)) for _ in range(20))))

    named = [expm1_series(max_order), expm1_series(max_order, 2),
             PowerSeries.from_coeffs([0, 1, 1], max_order)]
    named += [random_change_of_variable(rng, max_order) for _ in range(5)]
    out.append(_first_failure("changevar: product form = sum form", (cbh_check(f) for f in named)))

    for a in (Fraction(1), Fraction(2), Fraction(1, 3), Fraction(-1)):
        out.append(odd_vanishing_report(a, max(max_order, 31)))
    return out


def bernoulli_checks(max_order: int) -> list[CheckReport]:
    out = []
    lookup = QLookup()
    solver = QRecursion()
    j_max = max(max_order, 24)

    def recursion_cases():
        for n in range(-8, 13):
            rec = q_recursive(n, j_max, solver)
            direct = q_series(1, n, -n + j_max)
            ok = rec == direct
            bad = None
            if not ok:
                j = next(j for j in range(j_max + 1) if rec.term(j) != direct.term(j))
                bad = {"n": n, "j": j}
            yield CheckReport("recursion", ok, counterexample=bad)

    out.append(_first_failure("bernoulli: recursion matches direct expansion", recursion_cases()))

    def table_cases():
        for j, expected in enumerate(known_values.EXPANSION_POLYNOMIALS):
            got = expansion_polynomial(j, lookup)
            yield CheckReport("expansion", got == expected,
                              counterexample=None if got == expected else
                              {"j": j, "expected": str(expected), "got": str(got)})

    out.append(_first_failure("bernoulli: expansion polynomials j = 0..5", table_cases()))
    out.append(_first_failure("bernoulli: polynomiality and divisibility j = 1..12",
                              (divisibility_check(j, lookup) for j in range(1, 13))))
    out.append(_first_failure(
        "bernoulli: convolution identity on [-6..6]^3",
        (convolution_check(m, n, j, lookup)
         for m in range(-6, 7) for n in range(-6, 7) for j in range(-6, 7))))
    out.append(_first_failure(
        "bernoulli: weighted convolution identity on [-8..8]^2",
        (weighted_convolution_check(m, n, lookup) for m in range(-8, 9) for n in range(-8, 9))))

    def consistency_cases():
        table = bernoulli_numbers(24)
        q11 = lookup.table(1, 23)
        yield CheckReport("B_1", table[1] == Fraction(1, 2))
        for j in range(25):
            ok = table[j] == math.factorial(j) * q11[j - 1]
            yield CheckReport("B_j = j! q", ok, counterexample=None if ok else {"j": j})
            ok = bernoulli_polynomial_value(j, 1) == table[j]
            yield CheckReport("B_j(1) = B_j", ok, counterexample=None if ok else {"j": j})
        for j in range(3, 24, 2):
            yield CheckReport("odd B_j", table[j] == 0, counterexample={"j": j} if table[j] else None)

    out.append(_first_failure("bernoulli: B_j = j! q^(1,1)_(j-1), B_j(1) = B_j", consistency_cases()))
    return out


def jacobi_checks(max_order: int) -> list[CheckReport]:
    oracle = ResidueOracle()
    return [
        residue_check(range(-12, 13), range(1, 13), oracle),
        commutator_check(range(0, 5), range(-2, 3), range(-6, 7), 8, oracle),
    ]


_RUNNERS: dict[str, Callable[[int], list[CheckReport]]] = {
    "series": series_checks,
    "changevar": changevar_checks,
    "bernoulli": bernoulli_checks,
    "jacobi": jacobi_checks,
}


def run_suite(suite: str = "all", max_order: int = 20) -> list[CheckReport]:
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    names = SUITES if suite == "all" else (suite,)
    reports: list[CheckReport] = []
    for name in names:
        if name not in _RUNNERS:
            raise ValueError(f"unknown suite {name!r}")
        reports.extend(_RUNNERS[name](max_order))
    return reports
