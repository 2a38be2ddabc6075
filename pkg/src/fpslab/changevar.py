"""Derivations ``b x^{j+1} d/dx``, their exponentials, and the two ways of
writing a change of variable ``f(x) = x + a_2 x^2 + ...`` as an operator
acting on ``x``:

* product form: ``... exp(b_2 x^3 d/dx) exp(b_1 x^2 d/dx) x = f(x)``
* sum form: ``exp(sum_j A_j x^{j+1} d/dx) x = f(x)``
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .reports import CheckReport
from .series import (
    Number,
    PowerSeries,
    SeriesError,
    compose,
    expm1_series,
    format_rational,
    parse_rational,
    reversion,
    x_series,
)


@dataclass(frozen=True)
class DerivationTerm:
    """The operator ``coefficient * x^{j+1} d/dx``."""

    j: int
    coefficient: Fraction = Fraction(1)

    def __post_init__(self):
        if self.j < 1:
            raise SeriesError("degree shift j must be >= 1")
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))


def apply_derivation(j: int, g: PowerSeries) -> PowerSeries:
    """``x^{j+1} g'(x)`` at the order of ``g``."""
    if j < 1:
        raise SeriesError("degree shift j must be >= 1")
    out = [Fraction(0)] * (g.order + 1)
    for k in range(j + 1, g.order + 1):
        out[k] = (k - j) * g.coeffs[k - j]
    return PowerSeries(tuple(out))


def apply_vector_field(coeffs: Sequence[Number], g: PowerSeries) -> PowerSeries:
    """``sum_j coeffs[j-1] x^{j+1} g'(x)``."""
    out = [Fraction(0)] * (g.order + 1)
    for j, a in enumerate(coeffs, start=1):
        if not a:
            continue
        for k in range(j + 1, g.order + 1):
            c = g.coeffs[k - j]
            if c:
                out[k] += a * (k - j) * c
    return PowerSeries(tuple(out))


def _exp_of(step, g: PowerSeries) -> PowerSeries:
    # step raises the valuation of its argument by at least one, so the
    # exponential series stops after at most order + 1 terms
    total = list(g.coeffs)
    term = g
    for i in range(1, g.order + 2):
        term = step(term) * Fraction(1, i)
        if term.is_zero():
            break
        for k, c in enumerate(term.coeffs):
            total[k] += c
    return PowerSeries(tuple(total))


def exp_derivation(term: DerivationTerm, g: PowerSeries) -> PowerSeries:
    """``exp(b x^{j+1} d/dx) g``."""
    if term.coefficient == 0:
        return g
    b, j = term.coefficient, term.j
    return _exp_of(lambda s: apply_derivation(j, s) * b, g)


def exp_vector_field(coeffs: Sequence[Number], g: PowerSeries) -> PowerSeries:
    """``exp(sum_j coeffs[j-1] x^{j+1} d/dx) g``."""
    coeffs = [Fraction(c) for c in coeffs]
    if not any(coeffs):
        return g
    return _exp_of(lambda s: apply_vector_field(coeffs, s), g)


def _check_unit_change_of_variable(f: PowerSeries) -> None:
    if f.order < 1 or f.coeffs[0] != 0 or f.coeffs[1] != 1:
        raise SeriesError(
            "expected f(x) = x + a_2 x^2 + ... (zero constant term, unit linear coefficient)"
        )


@dataclass(frozen=True)
class Decomposition:
    """``b_1 .. b_N`` of the product form; reproduces ``f`` through degree ``N + 1``."""

    terms: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(Fraction(b) for b in self.terms))

    @property
    def order(self) -> int:
        return len(self.terms)

    def __getitem__(self, n: int) -> Fraction:
        """``b_n`` with 1-based ``n``."""
        if not 1 <= n <= self.order:
            raise IndexError(f"b_{n} is outside 1..{self.order}")
        return self.terms[n - 1]

    def scaled(self) -> tuple[Fraction, ...]:
        """``n! * b_n`` for ``n = 1 .. N``."""
        return tuple(math.factorial(n) * b for n, b in enumerate(self.terms, start=1))

    def to_json(self) -> dict:
        return {"order": self.order, "terms": [format_rational(b) for b in self.terms]}

    @classmethod
    def from_json(cls, obj: dict) -> Decomposition:
        terms = tuple(parse_rational(s) for s in obj["terms"])
        if len(terms) != obj["order"]:
            raise SeriesError("term count does not match order")
        return cls(terms)


@dataclass(frozen=True)
class SumForm:
    """``A_1 .. A_N`` of the sum form; reproduces ``f`` through degree ``N + 1``."""

    terms: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(Fraction(a) for a in self.terms))

    @property
    def order(self) -> int:
        return len(self.terms)

    def __getitem__(self, n: int) -> Fraction:
        if not 1 <= n <= self.order:
            raise IndexError(f"A_{n} is outside 1..{self.order}")
        return self.terms[n - 1]

    def to_json(self) -> dict:
        return {"order": self.order, "terms": [format_rational(a) for a in self.terms]}

    @classmethod
    def from_json(cls, obj: dict) -> SumForm:
        terms = tuple(parse_rational(s) for s in obj["terms"])
        if len(terms) != obj["order"]:
            raise SeriesError("term count does not match order")
        return cls(terms)


def decompose(f: PowerSeries) -> Decomposition:
    """Product-form coefficients ``b_1 .. b_{f.order - 1}``.

    Each factor ``exp(b_n x^{n+1} d/dx)`` leaves degrees ``<= n`` alone and
    adds exactly ``b_n`` to the coefficient of ``x^{n+1}``, so ``b_n`` is the
    gap between ``f`` and the partial product built from ``b_1 .. b_{n-1}``.
    """
    _check_unit_change_of_variable(f)
    partial = x_series(f.order)
    terms = []
    for n in range(1, f.order):
        b = f.coeffs[n + 1] - partial.coeffs[n + 1]
        terms.append(b)
        partial = exp_derivation(DerivationTerm(n, b), partial)
    return Decomposition(tuple(terms))


def apply_decomposition(
    d: Decomposition, g: PowerSeries, reversed: bool = False, negated: bool = False
) -> PowerSeries:
    """Apply the factors of ``d`` to ``g`` one at a time.

    Default order is ``exp(b_N ...) ... exp(b_1 x^2 d/dx) g``.  With
    ``reversed=True, negated=True`` this is ``exp(-b_1 x^2 d/dx) ... exp(-b_N ...) g``,
    the inverse operator.  The result is exact through degree ``N + 1``.
    """
    order = min(g.order, d.order + 1)
    out = g.truncate(order)
    sign = -1 if negated else 1
    factors = list(enumerate(d.terms, start=1))
    # the factor written rightmost acts first
    if reversed:
        factors = factors[::-1]
    for j, b in factors:
        if j >= order:
            # raises degree past the window
            continue
        out = exp_derivation(DerivationTerm(j, sign * b), out)
    return out


def sum_form(f: PowerSeries) -> SumForm:
    """Sum-form coefficients ``A_1 .. A_{f.order - 1}``.

    ``A_n`` enters the coefficient of ``x^{n+1}`` in ``exp(sum A_j x^{j+1} d/dx) x``
    linearly with unit weight; everything else there comes from lower ``A``.
    """
    _check_unit_change_of_variable(f)
    terms: list[Fraction] = []
    for n in range(1, f.order):
        lhs = exp_vector_field(terms, x_series(n + 1))
        terms.append(f.coeffs[n + 1] - lhs.coeffs[n + 1])
    return SumForm(tuple(terms))


def _first_mismatch(a: PowerSeries, b: PowerSeries) -> int | None:
    for k in range(min(a.order, b.order) + 1):
        if a.coeffs[k] != b.coeffs[k]:
            return k
    return None


def cbh_check(f: PowerSeries) -> CheckReport:
    """Product form and sum form agree with ``f`` and with each other.

    Besides matching on ``x``, the two operators are compared on every basis
    monomial ``x^i`` of the truncated space, which is the operator identity
    ``prod exp(b_j D_j) = exp(sum A_j D_j)`` restricted to degrees ``<= N + 1``.
    """
    _check_unit_change_of_variable(f)
    d = decompose(f)
    a = sum_form(f)
    order = f.order
    x = x_series(order)
    product_side = apply_decomposition(d, x)
    sum_side = exp_vector_field(a.terms, x)
    name = f"cbh(order={order})"
    for label, side in (("product form", product_side), ("sum form", sum_side)):
        k = _first_mismatch(side, f)
        if k is not None:
            return CheckReport(
                name, False, f"{label} differs from f",
                counterexample={"degree": k, "expected": format_rational(f.coeffs[k]),
                                "got": format_rational(side.coeffs[k])},
            )
    for i in range(2, order + 1):
        mono = PowerSeries.from_coeffs([0] * i + [1], order)
        p = apply_decomposition(d, mono)
        s = exp_vector_field(a.terms, mono)
        k = _first_mismatch(p, s)
        if k is not None:
            return CheckReport(
                name, False, f"operators differ on x^{i}",
                counterexample={"monomial": i, "degree": k,
                                "product": format_rational(p.coeffs[k]),
                                "sum": format_rational(s.coeffs[k])},
            )
    return CheckReport(name, True, f"both forms reproduce f through degree {order}")


def inverse_check(f: PowerSeries) -> CheckReport:
    """The reversed, negated product applied to ``x`` is the compositional inverse."""
    d = decompose(f)
    star = apply_decomposition(d, x_series(f.order), reversed=True, negated=True)
    inv = reversion(f)
    name = f"inverse-product(order={f.order})"
    k = _first_mismatch(star, inv)
    if k is not None:
        return CheckReport(name, False, "reversed product differs from reversion",
                           counterexample={"degree": k})
    for label, comp in (("f(f*)", compose(f, star)), ("f*(f)", compose(star, f))):
        k = _first_mismatch(comp, x_series(f.order))
        if k is not None:
            return CheckReport(name, False, f"{label} is not x", counterexample={"degree": k})
    return CheckReport(name, True)


def odd_vanishing_report(a: Number, order: int) -> CheckReport:
    """Decompose ``(e^{a x} - 1)/a`` and check ``b_1 = a/2`` and odd ``b_j = 0`` (j > 1).

    The signs of ``b_{2n}`` for ``n > 1`` are recorded in ``data`` but do not
    affect ``passed``.
    """
    a = Fraction(a)
    if a == 0:
        raise SeriesError("a must be nonzero")
    d = decompose(expm1_series(order, a))
    name = f"odd-vanishing(a={format_rational(a)}, N={d.order})"
    if d.order >= 1 and d[1] != a / 2:
        return CheckReport(name, False, "b_1 != a/2",
                           counterexample={"j": 1, "b": format_rational(d[1])})
    for j in range(3, d.order + 1, 2):
        if d[j] != 0:
            return CheckReport(name, False, "odd coefficient does not vanish",
                               counterexample={"j": j, "b": format_rational(d[j])})
    signs = {f"b_{2 * n}": ("+" if d[2 * n] > 0 else "-" if d[2 * n] < 0 else "0")
             for n in range(2, d.order // 2 + 1)}
    seq = list(signs.values())
    alternates = all(s != "0" for s in seq) and all(p != q for p, q in zip(seq, seq[1:]))
    return CheckReport(
        name, True,
        f"b_1 = a/2 and b_j = 0 for odd 1 < j <= {d.order}",
        data={"even_signs": signs, "even_signs_alternate": alternates},
    )
