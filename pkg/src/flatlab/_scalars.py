"""
Exact coefficient fields.

Elements of the rational field are `fractions.Fraction` values (always in
lowest terms with a positive denominator).  Elements of a prime field are
plain integers in ``range(p)``.  Field objects carry the arithmetic so that
the polynomial and Groebner code never needs to know which one it is using.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Union

import sympy

MAX_PRIME = 2**31


@dataclasses.dataclass(frozen=True)
class RationalField:
    characteristic = 0

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / a

    def div(self, a, b):
        return a * self.inv(b)

    def to_fraction(self, a) -> Fraction:
        return Fraction(a)

    def random_element(self, rng, *, bound=3, nonzero=False):
        while True:
            value = Fraction(
                rng.randint(-bound, bound), rng.choice((1, 1, 1, 2))
            )
            if value or not nonzero:
                return value

    def __str__(self) -> str:
        return "Q"


@dataclasses.dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not 2 <= self.p < MAX_PRIME or not sympy.isprime(self.p):
            raise ValueError(f"{self.p} is not a prime below 2**31")

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value) -> int:
        value = Fraction(value)
        numerator = value.numerator % self.p
        denominator = value.denominator % self.p
        if denominator == 0:
            raise ZeroDivisionError(
                f"denominator of {value} vanishes modulo {self.p}"
            )
        return numerator * pow(denominator, -1, self.p) % self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def to_fraction(self, a) -> Fraction:
        return Fraction(a % self.p)

    def random_element(self, rng, *, bound=3, nonzero=False):
        low = 1 if nonzero else 0
        return rng.randint(low, self.p - 1)

    def __str__(self) -> str:
        return f"Fp {self.p}"


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def format_scalar(value) -> str:
    """
    Serialises an exact scalar as ``"p/q"`` in lowest terms.  Integers are
    written with an explicit denominator of 1.
    """
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
