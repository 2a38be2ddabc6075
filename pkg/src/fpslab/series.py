"""Exact truncated power series and Laurent series over the rationals.

Every value carries the degree through which it is known exactly.  Binary
operations propagate the smaller of the two orders, so nothing past the
provable window is ever reported.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class SeriesError(ValueError):
    """A precondition of a series operation does not hold."""


class TruncationError(SeriesError):
    """A coefficient outside the known window was requested."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a canonical :class:`Fraction`."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text.replace(" ", ""))


def format_rational(value: Number) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _frac(c) -> Fraction:
    return c if type(c) is Fraction else Fraction(c)


def _scaled(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    # integer numerators over a common denominator; integer convolution is
    # far cheaper than Fraction arithmetic
    den = math.lcm(*(c.denominator for c in coeffs))
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> tuple[Fraction, ...]:
    ia, da = _scaled(a[: order + 1])
    ib, db = _scaled(b[: order + 1])
    nz = [(i, v) for i, v in enumerate(ia) if v]
    den = da * db
    out = []
    for k in range(order + 1):
        s = 0
        for i, v in nz:
            if i > k:
                break
            s += v * ib[k - i]
        out.append(Fraction(s, den))
    return tuple(out)


@dataclass(frozen=True)
class PowerSeries:
    """``c[0] + c[1] x + ... + c[order] x**order + O(x**(order+1))``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise SeriesError("a power series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Number], order: int | None = None) -> PowerSeries:
        """Build from leading coefficients, zero-padding up to ``order``."""
        cs = [_frac(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise SeriesError("order must be nonnegative")
        cs = cs[: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if k > self.order:
            raise TruncationError(f"coefficient {k} is beyond order {self.order}")
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all known ones vanish."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def derivative(self) -> PowerSeries:
        if self.order == 0:
            return PowerSeries((Fraction(0),))
        return PowerSeries(tuple(k * self.coeffs[k] for k in range(1, self.order + 1)))

    def shift(self, j: int) -> PowerSeries:
        """Multiply by ``x**j`` keeping the same order (``j >= 0``)."""
        if j < 0:
            raise SeriesError("use a Laurent series for negative shifts")
        zeros = (Fraction(0),) * j
        return PowerSeries((zeros + self.coeffs)[: self.order + 1])

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            return add(self, other)
        if isinstance(other, (int, Fraction)):
            return PowerSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (PowerSeries, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return PowerSeries(tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, PowerSeries):
            return mul(self, reciprocal(other))
        return NotImplemented

    def __pow__(self, n: int) -> PowerSeries:
        return power(self, n)

    def __call__(self, inner: PowerSeries) -> PowerSeries:
        return compose(self, inner)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
                coef = format_rational(c)
                if mono and c == 1:
                    coef = ""
                elif mono and c == -1:
                    coef = "-"
                elif mono:
                    coef = f"({coef})*" if "/" in coef else f"{coef}*"
                terms.append(coef + mono)
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(x^{self.order + 1})"

    def to_json(self) -> dict:
        return {
            "lowest": 0,
            "order": self.order,
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> PowerSeries:
        if obj.get("lowest", 0) != 0:
            raise SeriesError("power series JSON must have lowest = 0")
        cs = [parse_rational(s) for s in obj["coeffs"]]
        if len(cs) != obj["order"] + 1:
            raise SeriesError("coefficient count does not match order")
        return cls(tuple(cs))


def add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order)
    return PowerSeries(tuple(a.coeffs[k] + b.coeffs[k] for k in range(n + 1)))


def mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return PowerSeries(_convolve(a.coeffs, b.coeffs, min(a.order, b.order)))


def power(a: PowerSeries, n: int) -> PowerSeries:
    """Integer power; negative exponents go through :func:`reciprocal`."""
    if n < 0:
        return power(reciprocal(a), -n)
    result = PowerSeries.from_coeffs([1], a.order)
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """``outer(inner(x))``; ``inner`` must have zero constant term."""
    if inner.coeffs[0] != 0:
        raise SeriesError("inner series must have zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    acc = PowerSeries.from_coeffs([outer.coeffs[n]], n)
    for k in range(n - 1, -1, -1):
        acc = mul(acc, inner) + outer.coeffs[k]
    return acc


def reciprocal(a: PowerSeries) -> PowerSeries:
    a0 = a.coeffs[0]
    if a0 == 0:
        raise SeriesError("reciprocal needs a nonzero constant term")
    inv0 = 1 / a0
    out = [inv0]
    for k in range(1, a.order + 1):
        s = sum((a.coeffs[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
        out.append(-inv0 * s)
    return PowerSeries(tuple(out))


def exp_series(a: PowerSeries) -> PowerSeries:
    if a.coeffs[0] != 0:
        raise SeriesError("exp_series needs zero constant term")
    # from b' = a' b
    da = [k * a.coeffs[k] for k in range(a.order + 1)]
    out = [Fraction(1)]
    for k in range(1, a.order + 1):
        s = sum((da[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
        out.append(s / k)
    return PowerSeries(tuple(out))


def log_series(a: PowerSeries) -> PowerSeries:
    if a.coeffs[0] != 1:
        raise SeriesError("log_series needs constant term 1")
    if a.order == 0:
        return PowerSeries((Fraction(0),))
    q = mul(a.derivative(), reciprocal(a.truncate(a.order - 1)))
    return PowerSeries((Fraction(0),) + tuple(q.coeffs[k] / (k + 1) for k in range(a.order)))


def reversion(f: PowerSeries) -> PowerSeries:
    """Compositional inverse of ``x + f2 x^2 + ...``.

    Solves ``g(f(x)) = x`` one coefficient at a time: ``g_n`` enters the
    coefficient of ``x**n`` linearly with unit weight, all other
    contributions come from ``g_1 .. g_{n-1}`` and the powers of ``f``.
    """
    if f.order < 1 or f.coeffs[0] != 0 or f.coeffs[1] != 1:
        raise SeriesError("reversion needs zero constant term and unit linear coefficient")
    n = f.order
    powers = [None, f]
    for _ in range(2, n):
        powers.append(mul(powers[-1], f))
    g = [Fraction(0), Fraction(1)]
    for k in range(2, n + 1):
        s = sum((g[i] * powers[i].coeffs[k] for i in range(1, k)), Fraction(0))
        g.append(-s)
    return PowerSeries(tuple(g))


def x_series(order: int) -> PowerSeries:
    return PowerSeries.from_coeffs([0, 1], order)


def constant(c: Number, order: int) -> PowerSeries:
    return PowerSeries.from_coeffs([c], order)


def exp_linear(m: Number, order: int) -> PowerSeries:
    """``e^{m x}``."""
    m = Fraction(m)
    out = [Fraction(1)]
    for k in range(1, order + 1):
        out.append(out[-1] * m / k)
    return PowerSeries(tuple(out))


def expm1_series(order: int, a: Number = 1) -> PowerSeries:
    """``(e^{a x} - 1)/a``; unit linear coefficient for every nonzero ``a``."""
    a = Fraction(a)
    if a == 0:
        raise SeriesError("a must be nonzero")
    e = exp_linear(a, order)
    return PowerSeries((Fraction(0),) + tuple(c / a for c in e.coeffs[1:]))


def log1p_series(order: int, a: Number = 1) -> PowerSeries:
    """``log(1 + a x)/a``."""
    a = Fraction(a)
    if a == 0:
        raise SeriesError("a must be nonzero")
    out = [Fraction(0)] + [(-1) ** (k + 1) * a ** (k - 1) / k for k in range(1, order + 1)]
    return PowerSeries(tuple(out))


def expm1_over_x(order: int) -> PowerSeries:
    """``(e^x - 1)/x = 1 + x/2 + x^2/6 + ...``."""
    out = [Fraction(1)]
    for k in range(1, order + 1):
        out.append(out[-1] / (k + 1))
    return PowerSeries(tuple(out))


@dataclass(frozen=True)
class LaurentSeries:
    """Coefficients of ``x**lowest .. x**top``; all exponents below ``lowest`` vanish.

    ``lowest`` is kept as given even when its coefficient is zero, so callers
    can index from a fixed exponent.
    """

    lowest: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise SeriesError("a Laurent series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))

    @property
    def top(self) -> int:
        return self.lowest + len(self.coeffs) - 1

    @classmethod
    def from_power_series(cls, ps: PowerSeries, shift: int = 0) -> LaurentSeries:
        """``x**shift * ps``."""
        return cls(shift, ps.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return laurent_coefficient(self, k)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return laurent_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return LaurentSeries(self.lowest, tuple(c * other for c in self.coeffs))
        return NotImplemented

    def residue(self) -> Fraction:
        return laurent_coefficient(self, -1)

    def items(self):
        return [(self.lowest + i, c) for i, c in enumerate(self.coeffs)]

    def to_json(self) -> dict:
        return {
            "lowest": self.lowest,
            "top": self.top,
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> LaurentSeries:
        cs = [parse_rational(s) for s in obj["coeffs"]]
        if len(cs) != obj["top"] - obj["lowest"] + 1:
            raise SeriesError("coefficient count does not match window")
        return cls(obj["lowest"], tuple(cs))


def laurent_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    # the product is known through the smaller of (a.top + b.lowest, b.top + a.lowest)
    width = min(len(a.coeffs), len(b.coeffs)) - 1
    return LaurentSeries(a.lowest + b.lowest, _convolve(a.coeffs, b.coeffs, width))


def laurent_coefficient(a: LaurentSeries, k: int) -> Fraction:
    """Coefficient of ``x**k``.

    Exponents below ``lowest`` are provably zero and return 0; exponents
    above ``top`` are unknown and raise :class:`TruncationError`.
    """
    if k < a.lowest:
        return Fraction(0)
    if k > a.top:
        raise TruncationError(f"exponent {k} is beyond the known window ending at {a.top}")
    return a.coeffs[k - a.lowest]
