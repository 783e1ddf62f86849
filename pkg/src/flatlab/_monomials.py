from __future__ import annotations

import dataclasses
import itertools
from typing import Iterable, Iterator, Tuple


class Monomial(tuple):
    """
    An exponent vector.  The total degree is computed once on construction.
    """

    def __new__(cls, exponents: Iterable[int]) -> Monomial:
        self = super().__new__(cls, exponents)
        degree = 0
        for exponent in self:
            if exponent < 0:
                raise ValueError(f"negative exponent in {tuple(self)!r}")
            degree += exponent
        self.degree = degree
        return self

    @classmethod
    def one(cls, nvars: int) -> Monomial:
        return cls((0,) * nvars)

    @classmethod
    def variable(cls, nvars: int, index: int) -> Monomial:
        return cls(1 if i == index else 0 for i in range(nvars))

    def mul(self, other: Monomial) -> Monomial:
        return Monomial(a + b for a, b in zip(self, other))

    def divides(self, other: Monomial) -> bool:
        for a, b in zip(self, other):
            if a > b:
                return False
        return True

    def div(self, other: Monomial) -> Monomial:
        """
        Returns ``self / other``.  Only valid if `other` divides `self`.
        """
        return Monomial(a - b for a, b in zip(self, other))

    def lcm(self, other: Monomial) -> Monomial:
        return Monomial(max(a, b) for a, b in zip(self, other))

    def is_coprime(self, other: Monomial) -> bool:
        for a, b in zip(self, other):
            if a and b:
                return False
        return True

    def __repr__(self) -> str:
        return f"Monomial({tuple(self)!r})"


def _degrevlex_key(exponents) -> tuple:
    return (sum(exponents), tuple(-e for e in reversed(exponents)))


@dataclasses.dataclass(frozen=True)
class MonomialOrder:
    """
    Either plain ``degrevlex``, or a ``block`` order in which the trailing
    x-block dominates and the leading y-block breaks ties.  Both blocks are
    compared by degrevlex.  Larger keys mean larger monomials.
    """

    kind: str = "degrevlex"
    y_count: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, monomial: Tuple[int, ...]) -> tuple:
        if self.kind == "degrevlex":
            return _degrevlex_key(monomial)
        return (
            _degrevlex_key(monomial[self.y_count :]),
            _degrevlex_key(monomial[: self.y_count]),
        )

    def compare(self, a: Monomial, b: Monomial) -> int:
        key_a, key_b = self.key(a), self.key(b)
        return (key_a > key_b) - (key_a < key_b)


DEGREVLEX = MonomialOrder()


@dataclasses.dataclass(frozen=True)
class ModuleOrder:
    """
    Term-over-position order on pairs ``(component, monomial)``.  Equal
    monomials are broken in favour of the lower component index.

    With ``eliminate=p`` every term in the first `p` components is larger
    than every term in the remaining ones, which is what syzygy computations
    need.
    """

    base: MonomialOrder = DEGREVLEX
    eliminate: int = 0

    def key(self, term: Tuple[int, Monomial]) -> tuple:
        component, monomial = term
        if self.eliminate:
            return (
                component < self.eliminate,
                self.base.key(monomial),
                -component,
            )
        return (self.base.key(monomial), -component)


def monomials_of_degree(nvars: int, degree: int) -> Iterator[Monomial]:
    """
    Yields every monomial of the given total degree, in lexicographically
    descending exponent order.
    """
    if degree < 0:
        return
    if nvars == 0:
        if degree == 0:
            yield Monomial(())
        return
    for combination in itertools.combinations_with_replacement(
        range(nvars), degree
    ):
        exponents = [0] * nvars
        for index in combination:
            exponents[index] += 1
        yield Monomial(exponents)


def monomials_below(nvars: int, degree: int) -> Iterator[Monomial]:
    """
    Yields every monomial of total degree strictly less than `degree`, lowest
    degrees first.
    """
    for d in range(degree):
        yield from monomials_of_degree(nvars, d)
