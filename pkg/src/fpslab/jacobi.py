"""Residues of ``e^{my}/(e^y - 1)^n`` and the binomial coefficients that
appear in the Jacobi identity for the modified vertex operators
``X(u, x) = Y(x^{L(0)} u, x)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bernoulli import QLookup
from .reports import CheckReport
from .series import SeriesError, format_rational, parse_rational


def generalized_binomial(top: int, bottom: int) -> int:
    """``top (top-1) ... (top-bottom+1) / bottom!`` for any integer ``top``."""
    if bottom < 0:
        raise ValueError("bottom must be nonnegative")
    num = 1
    for i in range(bottom):
        num *= top - i
    return num // math.factorial(bottom)


def residue_formula(m: int, n: int) -> int:
    """Closed form for ``Res_y e^{my}/(e^y - 1)^n``, ``n > 0``."""
    if n <= 0:
        raise SeriesError("n must be positive: the series needs a pole")
    return generalized_binomial(m - 1, n - 1)


class ResidueOracle:
    """``Res_y e^{my}/(e^y - 1)^n`` by direct Laurent expansion, cached per ``m``."""

    def __init__(self):
        self._by_m: dict[int, QLookup] = {}

    def __call__(self, m: int, n: int) -> Fraction:
        if n <= 0:
            raise SeriesError("n must be positive: the series needs a pole")
        lookup = self._by_m.setdefault(m, QLookup(m))
        return lookup(n, -1)


def residue_oracle(m: int, n: int, oracle: ResidueOracle | None = None) -> Fraction:
    return (oracle or ResidueOracle())(m, n)


@dataclass(frozen=True)
class CoefficientQuery:
    """Indices of the term ``x_1^j x_2^{n-j} X(u_k v, x_2)`` with ``wt u = weight``."""

    weight: int
    j: int
    k: int
    n: int


def commutator_coefficient(q: CoefficientQuery) -> int:
    """``C(wt u - j - 1, k - n)`` if ``k >= n``, else 0."""
    if q.k < q.n:
        return 0
    return generalized_binomial(q.weight - q.j - 1, q.k - q.n)


@dataclass(frozen=True)
class CoefficientTable:
    """Rows ``(j, k, value)`` of the coefficient grid for fixed ``(w, n)``."""

    w: int
    n: int
    rows: tuple[tuple[int, int, int], ...]

    def value(self, j: int, k: int) -> int:
        for jj, kk, v in self.rows:
            if jj == j and kk == k:
                return v
        raise KeyError((j, k))

    def csv_rows(self) -> list[list[str]]:
        return [[str(self.w), str(self.n), str(j), str(k), str(v)] for j, k, v in self.rows]

    @classmethod
    def from_csv_rows(cls, rows: Iterable[Sequence[str]]) -> list[CoefficientTable]:
        groups: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
        for w, n, j, k, v in rows:
            value = parse_rational(v)
            if value.denominator != 1:
                raise SeriesError(f"non-integer coefficient {v}")
            groups.setdefault((int(w), int(n)), []).append((int(j), int(k), value.numerator))
        return [cls(w, n, tuple(r)) for (w, n), r in groups.items()]

    def to_json(self) -> dict:
        return {"w": self.w, "n": self.n,
                "rows": [{"j": j, "k": k, "value": v} for j, k, v in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> CoefficientTable:
        return cls(obj["w"], obj["n"],
                   tuple((r["j"], r["k"], int(r["value"])) for r in obj["rows"]))


def coefficient_table(w: int, n: int, j_range: Iterable[int], k_range: Iterable[int]) -> CoefficientTable:
    """Grid of :func:`commutator_coefficient`; ``n = 0`` is the plain commutator."""
    ks = list(k_range)
    if any(k < n for k in ks):
        raise ValueError("k_range must lie in [n, inf)")
    rows = tuple((j, k, commutator_coefficient(CoefficientQuery(w, j, k, n)))
                 for j in j_range for k in ks)
    return CoefficientTable(w, n, rows)


def residue_rows(m_range: Iterable[int], n_range: Iterable[int],
                 oracle: ResidueOracle | None = None) -> list[tuple[int, int, int, Fraction]]:
    """``(m, n, formula, oracle)`` for every pair."""
    oracle = oracle or ResidueOracle()
    ns = list(n_range)
    return [(m, n, residue_formula(m, n), oracle(m, n)) for m in m_range for n in ns]


def residue_check(m_range: Iterable[int], n_range: Iterable[int],
                  oracle: ResidueOracle | None = None) -> CheckReport:
    rows = residue_rows(m_range, n_range, oracle)
    for m, n, formula, direct in rows:
        if formula != direct:
            return CheckReport("residues", False, counterexample={
                "m": m, "n": n, "formula": formula, "oracle": format_rational(direct)})
    return CheckReport("residues", True, f"{len(rows)} cases")


def commutator_check(ws: Iterable[int], ns: Iterable[int], js: Iterable[int], k_span: int,
                     oracle: ResidueOracle | None = None) -> CheckReport:
    """Every grid entry equals the residue it was derived from; entries with ``k < n`` vanish."""
    oracle = oracle or ResidueOracle()
    count = 0
    ns, js = list(ns), list(js)
    for w in ws:
        for n in ns:
            table = coefficient_table(w, n, js, range(n, n + k_span + 1))
            for j, k, v in table.rows:
                count += 1
                expected = oracle(w - j, k - n + 1)
                if v != expected:
                    return CheckReport("commutator-coefficients", False, counterexample={
                        "w": w, "n": n, "j": j, "k": k, "value": v,
                        "residue": format_rational(expected)})
            for j in js:
                for k in range(n - 3, n):
                    if commutator_coefficient(CoefficientQuery(w, j, k, n)) != 0:
                        return CheckReport("commutator-coefficients", False,
                                           "nonzero entry below k = n",
                                           counterexample={"w": w, "n": n, "j": j, "k": k})
    return CheckReport("commutator-coefficients", True, f"{count} entries")
