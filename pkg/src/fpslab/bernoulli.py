"""Bernoulli numbers, Bernoulli polynomial values and the Bernoulli-type
numbers ``q^{(m,n)}_k``, the coefficient of ``x^k`` in ``e^{mx}/(e^x - 1)^n``.

Bernoulli numbers follow the ``B_j = B_j(1)`` convention, so ``B_1 = +1/2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .reports import CheckReport
from .series import (
    Number,
    PowerSeries,
    SeriesError,
    TruncationError,
    exp_linear,
    expm1_over_x,
    format_rational,
    mul,
    parse_rational,
    power,
    reciprocal,
)


@dataclass(frozen=True)
class BernoulliTable:
    values: tuple[Fraction, ...]

    def __getitem__(self, j: int) -> Fraction:
        return self.values[j]

    def __len__(self):
        return len(self.values)

    def to_json(self) -> dict:
        return {"convention": "B_j = B_j(1)", "values": [format_rational(v) for v in self.values]}


def bernoulli_numbers(J: int) -> BernoulliTable:
    """``B_0 .. B_J`` with ``B_1 = +1/2``.

    Uses ``sum_{k<=j} C(j+1, k) B_k = j + 1``, the recurrence satisfied by the
    coefficients of ``x e^x/(e^x - 1)``.
    """
    if J < 0:
        raise ValueError("J must be nonnegative")
    values = [Fraction(1)]
    for j in range(1, J + 1):
        s = sum(math.comb(j + 1, k) * values[k] for k in range(j))
        values.append((j + 1 - s) / (j + 1))
    return BernoulliTable(tuple(values))


def bernoulli_polynomial_value(j: int, t: Number) -> Fraction:
    """``B_j(t)``, read off ``e^{tx}/(e^x - 1) = sum B_j(t) x^{j-1}/j!``."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    t = Fraction(t)
    s = mul(exp_linear(t, j), reciprocal(expm1_over_x(j)))
    return s.coeffs[j] * math.factorial(j)


@dataclass(frozen=True)
class QTable:
    """``q^{(m,n)}_k`` for ``k = -n .. top``; exponents below ``-n`` are zero."""

    m: int
    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise SeriesError("empty q-table")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def lowest(self) -> int:
        return -self.n

    @property
    def top(self) -> int:
        return -self.n + len(self.coeffs) - 1

    @property
    def entries(self) -> dict[int, Fraction]:
        return {self.lowest + i: c for i, c in enumerate(self.coeffs)}

    def __getitem__(self, k: int) -> Fraction:
        if k < self.lowest:
            return Fraction(0)
        if k > self.top:
            raise TruncationError(f"q^({self.m},{self.n})_{k} is beyond computed top {self.top}")
        return self.coeffs[k - self.lowest]

    def term(self, j: int) -> Fraction:
        """``q^{(m,n)}_{-n+j}``."""
        return self[-self.n + j]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "lowest": self.lowest,
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> QTable:
        if obj["lowest"] != -obj["n"]:
            raise SeriesError("q-table must start at exponent -n")
        return cls(obj["m"], obj["n"], tuple(parse_rational(s) for s in obj["coeffs"]))

    def csv_rows(self) -> list[list[str]]:
        return [[str(self.m), str(self.n), str(k), format_rational(c)]
                for k, c in self.entries.items()]

    @classmethod
    def from_csv_rows(cls, rows: Iterable[Sequence[str]]) -> list[QTable]:
        """Regroup ``(m, n, k, q)`` rows into tables, preserving order."""
        groups: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
        for m, n, k, q in rows:
            groups.setdefault((int(m), int(n)), []).append((int(k), parse_rational(q)))
        tables = []
        for (m, n), items in groups.items():
            ks = [k for k, _ in items]
            if ks != list(range(-n, -n + len(ks))):
                raise SeriesError(f"rows for (m={m}, n={n}) are not contiguous from -n")
            tables.append(cls(m, n, tuple(q for _, q in items)))
        return tables


def q_series(m: int, n: int, top: int) -> QTable:
    """Expand ``e^{mx}/(e^x - 1)^n`` directly through exponent ``top``.

    Written as ``x^{-n} e^{mx} ((e^x - 1)/x)^{-n}``; for ``n <= 0`` the last
    factor is a plain power and no reciprocal is taken.
    """
    if top < -n:
        raise ValueError("top must be >= -n")
    order = top + n
    h = expm1_over_x(order)
    body = power(h, -n) if n <= 0 else power(reciprocal(h), n)
    s = mul(exp_linear(m, order), body)
    return QTable(m, n, s.coeffs)


class QLookup:
    """Cache of directly expanded q-tables, extended on demand.

    Lookups of exponents below ``-n`` return 0 without expanding anything.
    """

    def __init__(self, m: int = 1):
        self.m = m
        self._tables: dict[int, QTable] = {}

    def table(self, n: int, top: int) -> QTable:
        t = self._tables.get(n)
        if t is None or t.top < top:
            t = q_series(self.m, n, max(top, -n + 8))
            self._tables[n] = t
        return t

    def __call__(self, n: int, k: int) -> Fraction:
        if k < -n:
            return Fraction(0)
        return self.table(n, k)[k]


class QRecursion:
    """``q^{(1,n)}_{-n+j}`` from the vertex-operator recursion alone.

    ``value(n, j)`` depends on ``value(n+i-j, i)`` and ``value(-n-i+j+2, j-i)``
    for ``0 < i < j``; results are memoized per ``(n, j)``.  Bernoulli numbers
    enter only through the classical recurrence, never through a q-expansion.
    """

    def __init__(self):
        self._memo: dict[tuple[int, int], Fraction] = {}
        self._bern = bernoulli_numbers(0)
        self._scaled_bern: list[Fraction] = [Fraction(1)]

    def _bj_over_fact(self, j: int) -> Fraction:
        if j >= len(self._scaled_bern):
            self._bern = bernoulli_numbers(max(j, 2 * len(self._bern)))
            self._scaled_bern = [b / math.factorial(i) for i, b in enumerate(self._bern.values)]
        return self._scaled_bern[j]

    def value(self, n: int, j: int) -> Fraction:
        if j < 0:
            return Fraction(0)
        if j == 0:
            return Fraction(1)
        key = (n, j)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        s = self._bj_over_fact(j) * (n - j - 1)
        for i in range(1, j):
            s += i * self.value(n + i - j, i) * self.value(-n - i + j + 2, j - i)
        out = -s / j
        self._memo[key] = out
        return out


def q_recursive(n: int, j_max: int, solver: QRecursion | None = None) -> QTable:
    """``q^{(1,n)}_{-n+j}`` for ``0 <= j <= j_max`` via :class:`QRecursion`."""
    if j_max < 0:
        raise ValueError("j_max must be nonnegative")
    solver = solver or QRecursion()
    return QTable(1, n, tuple(solver.value(n, j) for j in range(j_max + 1)))


def convolution_check(m: int, n: int, j: int, lookup: QLookup | None = None) -> CheckReport:
    """``sum_{k=m}^{-n+j} q^{(1,k+1)}_{-m-1} q^{(1,j-k+1)}_{-n-1} = q^{(1,j+1)}_{-m-n-1}``."""
    q = lookup or QLookup()
    lhs = sum((q(k + 1, -m - 1) * q(j - k + 1, -n - 1) for k in range(m, -n + j + 1)),
              Fraction(0))
    rhs = q(j + 1, -m - n - 1)
    name = f"convolution(m={m}, n={n}, j={j})"
    data = {"lhs": format_rational(lhs), "rhs": format_rational(rhs)}
    if lhs != rhs:
        return CheckReport(name, False, counterexample={"m": m, "n": n, "j": j, **data})
    return CheckReport(name, True, data=data)


def weighted_convolution_check(m: int, n: int, lookup: QLookup | None = None) -> CheckReport:
    """``sum_k k q^{(1,k+1)}_{-m-1} q^{(1,-k+1)}_{-n-1} = m [m + n = 0]``."""
    q = lookup or QLookup()
    lhs = sum((k * q(k + 1, -m - 1) * q(-k + 1, -n - 1) for k in range(m, -n + 1)),
              Fraction(0))
    rhs = Fraction(m if m + n == 0 else 0)
    name = f"weighted-convolution(m={m}, n={n})"
    data = {"lhs": format_rational(lhs), "rhs": format_rational(rhs)}
    if lhs != rhs:
        return CheckReport(name, False, counterexample={"m": m, "n": n, **data})
    return CheckReport(name, True, data=data)


@dataclass(frozen=True)
class NPolynomial:
    """Polynomial in ``n`` with rational coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs) if cs else (Fraction(0),))

    @classmethod
    def constant(cls, c: Number) -> NPolynomial:
        return cls((Fraction(c),))

    @classmethod
    def linear_factor(cls, root: Number) -> NPolynomial:
        """``n - root``."""
        return cls((-Fraction(root), Fraction(1)))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def __call__(self, n: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NPolynomial.constant(other)
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        a = a + (Fraction(0),) * (size - len(a))
        b = b + (Fraction(0),) * (size - len(b))
        return NPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return NPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NPolynomial(tuple(c * other for c in self.coeffs))
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for k, b in enumerate(other.coeffs):
                out[i + k] += a * b
        return NPolynomial(tuple(out))

    __rmul__ = __mul__

    @classmethod
    def interpolate(cls, points: Sequence[tuple[Number, Number]]) -> NPolynomial:
        """Exact Newton interpolation through distinct ``(n, value)`` points."""
        xs = [Fraction(p[0]) for p in points]
        if len(set(xs)) != len(xs):
            raise ValueError("interpolation nodes must be distinct")
        dd = [Fraction(p[1]) for p in points]
        for level in range(1, len(xs)):
            for i in range(len(xs) - 1, level - 1, -1):
                dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
        poly = NPolynomial.constant(dd[-1])
        for i in range(len(xs) - 2, -1, -1):
            poly = poly * NPolynomial.linear_factor(xs[i]) + dd[i]
        return poly

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0 and self.degree >= 0:
                continue
            mono = "" if k == 0 else ("n" if k == 1 else f"n^{k}")
            coef = format_rational(c)
            if mono:
                coef = "" if c == 1 else "-" if c == -1 else f"({coef})*"
            terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ")


class PropertyViolation(AssertionError):
    """An identity that should hold exactly was found to fail."""


def _expansion_nodes(j: int) -> tuple[list[int], list[int]]:
    sample = list(range(j + 2, 2 * j + 3))
    extra = max(3, j - 1)
    validate = list(range(-3, 1)) + list(range(2 * j + 3, 2 * j + 3 + extra))
    return sample, validate


def expansion_polynomial(j: int, lookup: QLookup | None = None) -> NPolynomial:
    """``q^{(1,n)}_{-n+j}`` as a polynomial in ``n``.

    Interpolated from ``n = j+2 .. 2j+2`` and then checked exactly at
    ``j + 3`` or more further integers; a mismatch raises
    :class:`PropertyViolation`.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    q = lookup or QLookup()
    sample, validate = _expansion_nodes(j)
    poly = NPolynomial.interpolate([(n, q(n, -n + j)) for n in sample])
    for n in validate:
        expected = q(n, -n + j)
        if poly(n) != expected:
            raise PropertyViolation(
                f"j={j}: interpolant gives {poly(n)} at n={n}, expansion gives {expected}"
            )
    return poly


def divisibility_check(j: int, lookup: QLookup | None = None) -> CheckReport:
    """Degree ``<= j`` and the forced roots of the ``j``-th expansion polynomial."""
    if j < 1:
        raise ValueError("j must be >= 1")
    name = f"polynomiality(j={j})"
    try:
        poly = expansion_polynomial(j, lookup)
    except PropertyViolation as exc:
        return CheckReport(name, False, str(exc), counterexample={"j": j})
    if poly.degree > j:
        return CheckReport(name, False, f"degree {poly.degree} > {j}",
                           counterexample={"j": j, "degree": poly.degree})
    roots = [j + 1]
    if j % 2 == 1:
        roots.append(2)
        if j > 1:
            roots.append(1)
    for r in roots:
        if poly(r) != 0:
            return CheckReport(name, False, f"does not vanish at n={r}",
                               counterexample={"j": j, "n": r, "value": format_rational(poly(r))})
    return CheckReport(name, True, f"degree {poly.degree}, vanishes at n in {sorted(set(roots))}",
                       data={"polynomial": str(poly)})
