from __future__ import annotations

import dataclasses
from typing import Dict, Iterable, List, Mapping, Tuple

from flatlab._exceptions import VariableMismatchError, ZeroPolynomialError
from flatlab._monomials import DEGREVLEX, Monomial, MonomialOrder
from flatlab._scalars import QQ, Field


@dataclasses.dataclass(frozen=True)
class PolynomialRing:
    field: Field = QQ
    variables: Tuple[str, ...] = ()
    order: MonomialOrder = DEGREVLEX

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, value) -> Polynomial:
        return Polynomial(self, {Monomial.one(self.nvars): self.field(value)})

    def monomial(self, monomial, coefficient=1) -> Polynomial:
        return Polynomial(
            self, {Monomial(monomial): self.field(coefficient)}
        )

    def gen(self, name: str) -> Polynomial:
        try:
            index = self.variables.index(name)
        except ValueError:
            raise VariableMismatchError(
                f"unknown variable {name!r}",
                expected=self.variables,
                actual=(name,),
            ) from None
        return self.monomial(Monomial.variable(self.nvars, index))

    def gens(self) -> List[Polynomial]:
        return [self.gen(name) for name in self.variables]

    def embed(self, polynomial: Polynomial) -> Polynomial:
        """
        Maps a polynomial from a ring over a subset of this ring's variables
        into this ring, matching variables by name.
        """
        if polynomial.ring == self:
            return polynomial
        source = polynomial.ring
        if source.field != self.field:
            raise VariableMismatchError(
                f"cannot embed a polynomial over {source.field} into a ring "
                f"over {self.field}",
                expected=self.variables,
                actual=source.variables,
            )
        try:
            positions = [
                self.variables.index(name) for name in source.variables
            ]
        except ValueError:
            raise VariableMismatchError(
                "variables missing from target ring",
                expected=self.variables,
                actual=source.variables,
            ) from None
        terms = {}
        for monomial, coefficient in polynomial.items():
            exponents = [0] * self.nvars
            for position, exponent in zip(positions, monomial):
                exponents[position] = exponent
            terms[Monomial(exponents)] = coefficient
        return Polynomial(self, terms)

    def with_order(self, order: MonomialOrder) -> PolynomialRing:
        return dataclasses.replace(self, order=order)


class Polynomial:
    """
    A sparse polynomial.  Never mutated after construction; stored terms
    always have nonzero coefficients.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(
        self, ring: PolynomialRing, terms: Mapping[Monomial, object]
    ) -> None:
        self.ring = ring
        self._terms: Dict[Monomial, object] = {
            monomial: coefficient
            for monomial, coefficient in terms.items()
            if coefficient != 0
        }
        self._hash = None

    def items(self) -> Iterable[Tuple[Monomial, object]]:
        return self._terms.items()

    def terms(self, order: MonomialOrder | None = None):
        """
        Returns ``(monomial, coefficient)`` pairs sorted from the largest to
        the smallest monomial.
        """
        order = order or self.ring.order
        return sorted(
            self._terms.items(),
            key=lambda item: order.key(item[0]),
            reverse=True,
        )

    def monomials(self) -> List[Monomial]:
        return [monomial for monomial, _ in self.terms()]

    def coefficient(self, monomial) -> object:
        return self._terms.get(Monomial(monomial), self.ring.field.zero)

    def constant_term(self) -> object:
        return self.coefficient(Monomial.one(self.ring.nvars))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(monomial.degree == 0 for monomial in self._terms)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(monomial.degree for monomial in self._terms)

    def partial_degrees(self, indices: Iterable[int]) -> set:
        """
        The set of degrees the terms have in the variables at `indices`.
        """
        indices = tuple(indices)
        return {
            sum(monomial[index] for index in indices)
            for monomial in self._terms
        }

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __neg__(self) -> Polynomial:
        neg = self.ring.field.neg
        return Polynomial(
            self.ring, {m: neg(c) for m, c in self._terms.items()}
        )

    def __add__(self, other) -> Polynomial:
        return poly_add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> Polynomial:
        return poly_add(self, -self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return poly_add(self._coerce(other), -self)

    def __mul__(self, other) -> Polynomial:
        return poly_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, scalar) -> Polynomial:
        mul = self.ring.field.mul
        scalar = self.ring.field(scalar)
        return Polynomial(
            self.ring, {m: mul(c, scalar) for m, c in self._terms.items()}
        )

    def mul_term(self, monomial: Monomial, coefficient) -> Polynomial:
        mul = self.ring.field.mul
        return Polynomial(
            self.ring,
            {m.mul(monomial): mul(c, coefficient) for m, c in self.items()},
        )

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        return self.ring.constant(other)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"<Polynomial {format_polynomial(self)!r}>"


def _check_rings(f: Polynomial, g: Polynomial) -> None:
    if f.ring != g.ring:
        raise VariableMismatchError(
            "polynomials live in different rings",
            expected=f.ring.variables,
            actual=g.ring.variables,
        )


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_rings(f, g)
    add = f.ring.field.add
    terms = dict(f.items())
    for monomial, coefficient in g.items():
        if monomial in terms:
            terms[monomial] = add(terms[monomial], coefficient)
        else:
            terms[monomial] = coefficient
    return Polynomial(f.ring, terms)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_rings(f, g)
    field = f.ring.field
    terms: Dict[Monomial, object] = {}
    for monomial_f, coefficient_f in f.items():
        for monomial_g, coefficient_g in g.items():
            monomial = monomial_f.mul(monomial_g)
            product = field.mul(coefficient_f, coefficient_g)
            if monomial in terms:
                terms[monomial] = field.add(terms[monomial], product)
            else:
                terms[monomial] = product
    return Polynomial(f.ring, terms)


def leading_term(
    f: Polynomial, order: MonomialOrder | None = None
) -> Tuple[Monomial, object]:
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no leading term")
    order = order or f.ring.order
    return max(f.items(), key=lambda item: order.key(item[0]))


def _format_monomial(monomial: Monomial, variables) -> str:
    factors = []
    for name, exponent in zip(variables, monomial):
        if exponent == 1:
            factors.append(name)
        elif exponent > 1:
            factors.append(f"{name}^{exponent}")
    return "*".join(factors)


def format_polynomial(f: Polynomial) -> str:
    """
    Renders `f` in the input syntax, largest term first.
    """
    if f.is_zero():
        return "0"
    field = f.ring.field
    pieces = []
    for monomial, coefficient in f.terms():
        value = field.to_fraction(coefficient)
        negative = field.characteristic == 0 and value < 0
        magnitude = -value if negative else value
        body = _format_monomial(monomial, f.ring.variables)
        if not body:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude}*{body}"
        if not pieces:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f"- {text}" if negative else f"+ {text}")
    return " ".join(pieces)
