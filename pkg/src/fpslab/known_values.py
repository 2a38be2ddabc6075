"""Published values the verification suite compares against."""
from fractions import Fraction as F

from .bernoulli import NPolynomial

# n! * b_n for f(x) = e^x - 1; odd n > 1 are zero
SCALED_B_EXP = {
    1: F(1, 2), 2: F(-1, 6), 4: F(-1, 20), 6: F(5, 84), 8: F(-7, 24),
    10: F(35, 22), 12: F(-4279, 312), 14: F(3003, 16),
}


def _lin(root):
    return NPolynomial.linear_factor(root)


def _poly(*coeffs):
    return NPolynomial(tuple(F(c) for c in coeffs))


# q^{(1,n)}_{-n+j} as polynomials in n, j = 0..5, in factored form
EXPANSION_POLYNOMIALS = (
    NPolynomial.constant(1),
    _lin(2) * F(-1, 2),
    _lin(3) * _lin(F(4, 3)) * F(1, 8),
    _lin(1) * _lin(2) * _lin(4) * F(-1, 48),
    _lin(5) * _poly(F(-16, 5), F(22, 3), -5, 1) * F(1, 384),
    _lin(1) * _lin(2) * _lin(6) * _poly(F(8, 3), F(-13, 3), 1) * F(-1, 3840),
)
