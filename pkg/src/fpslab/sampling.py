import random
from fractions import Fraction

from .series import PowerSeries


def random_rational(rng: random.Random, height: int = 5) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_series(rng: random.Random, order: int, height: int = 5) -> PowerSeries:
    return PowerSeries(tuple(random_rational(rng, height) for _ in range(order + 1)))


def random_change_of_variable(rng: random.Random, order: int, height: int = 5) -> PowerSeries:
    """``x + a_2 x^2 + ... + a_order x^order`` with small random rational ``a_k``."""
    tail = [random_rational(rng, height) for _ in range(2, order + 1)]
    return PowerSeries.from_coeffs([0, 1] + tail, order)
