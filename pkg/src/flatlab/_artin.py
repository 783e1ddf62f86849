"""
Local algebras ``k[y_1..y_s]/J`` supported at the origin.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from flatlab._exceptions import (
    InfiniteDimensionalError,
    NotArtinianError,
    NotLocalAtOriginError,
    UnitIdealError,
)
from flatlab._groebner import (
    GroebnerBasis,
    ideal_basis,
    reduce_polynomial,
    standard_monomials,
)
from flatlab._monomials import Monomial, monomials_below, monomials_of_degree
from flatlab._polynomials import Polynomial, PolynomialRing
from flatlab._scalars import QQ, Field

logger = logging.getLogger(__name__)


class LocalAlgebra:
    """
    ``k[y]/J`` with every generator of `J` vanishing at the origin.  The
    quotient may be infinite dimensional; see `ArtinAlgebra` for the finite
    case.
    """

    is_artinian = False

    def __init__(
        self,
        ring: PolynomialRing,
        generators: Sequence[Polynomial],
        basis: GroebnerBasis,
    ) -> None:
        self.ring = ring
        self.generators = tuple(generators)
        self.basis = basis

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.ring.variables

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def defining_ideal(self) -> Tuple[Polynomial, ...]:
        """
        The reduced Groebner basis of `J`.
        """
        return tuple(g.components[0] for g in self.basis.generators)

    def reduce(self, f: Polynomial) -> Polynomial:
        return reduce_polynomial(self.ring.embed(f), self.basis)

    def ideal(self, generators: Iterable[Polynomial]) -> IdealInA:
        return IdealInA(self, generators)

    def zero_ideal(self) -> IdealInA:
        return IdealInA(self, ())

    def maximal_ideal(self) -> IdealInA:
        return IdealInA(self, self.ring.gens())

    def maximal_ideal_power(self, k: int) -> IdealInA:
        """
        The ideal generated by all monomials of degree `k`.
        """
        if k <= 0:
            raise UnitIdealError("m^0 is the unit ideal")
        return IdealInA(
            self,
            (
                self.ring.monomial(monomial)
                for monomial in monomials_of_degree(self.nvars, k)
            ),
        )

    def __repr__(self) -> str:
        generators = ", ".join(str(g) for g in self.defining_ideal)
        variables = ", ".join(self.variables)
        return f"<{type(self).__name__} k[{variables}]/({generators})>"


class ArtinAlgebra(LocalAlgebra):
    is_artinian = True

    def __init__(
        self,
        ring: PolynomialRing,
        generators: Sequence[Polynomial],
        basis: GroebnerBasis,
        standard_basis: Sequence[Monomial],
    ) -> None:
        super().__init__(ring, generators, basis)
        self.standard_basis: Tuple[Monomial, ...] = tuple(standard_basis)
        self.length = len(self.standard_basis)
        self.nil_index = _nil_index(self)

    def graded_dimensions(self) -> List[int]:
        """
        ``dim m^d / m^(d+1)`` for ``d = 0 .. nil_index - 1``.
        """
        colengths = [0] + [
            self.maximal_ideal_power(d + 1).colength
            for d in range(self.nil_index)
        ]
        return [b - a for a, b in zip(colengths, colengths[1:])]


def _nil_index(algebra: ArtinAlgebra) -> int:
    for k in range(1, algebra.length + 1):
        if all(
            algebra.reduce(algebra.ring.monomial(monomial)).is_zero()
            for monomial in monomials_of_degree(algebra.nvars, k)
        ):
            return k
    raise AssertionError(
        "maximal ideal of an Artinian local algebra is nilpotent"
    )


class IdealInA:
    """
    An ideal of a local algebra, kept as the Groebner basis of its preimage
    ``J + I`` in the polynomial ring.
    """

    def __init__(
        self, algebra: LocalAlgebra, generators: Iterable[Polynomial]
    ) -> None:
        self.algebra = algebra
        self.generators: Tuple[Polynomial, ...] = tuple(
            algebra.ring.embed(g) for g in generators
        )
        self._quotient_basis: Optional[Tuple[Monomial, ...]] = None
        self.basis = ideal_basis(
            (*algebra.defining_ideal, *self.generators), algebra.ring
        )
        if self.basis.is_unit():
            raise UnitIdealError(
                "ideal contains a unit: "
                + ", ".join(str(g) for g in self.generators)
            )

    def quotient_basis(self) -> Tuple[Monomial, ...]:
        """
        Standard monomials of ``k[y]/(J + I)``, a k-basis of ``A/I``.
        """
        if self._quotient_basis is None:
            self._quotient_basis = tuple(
                monomial
                for _, monomial in standard_monomials(self.basis, 1)
            )
        return self._quotient_basis

    @property
    def colength(self) -> int:
        return len(self.quotient_basis())

    def is_finite(self) -> bool:
        try:
            self.quotient_basis()
        except InfiniteDimensionalError:
            return False
        return True

    def coordinates(self, f: Polynomial) -> Dict[Monomial, object]:
        """
        Coordinates of the class of `f` in ``A/I`` on `quotient_basis`.
        """
        remainder = reduce_polynomial(self.algebra.ring.embed(f), self.basis)
        return dict(remainder.items())

    def key(self) -> Tuple:
        """
        Canonical identity of the ideal: its reduced Groebner basis.
        """
        return tuple(
            frozenset(g.components[0].items()) for g in self.basis.generators
        )

    def contains(self, f: Polynomial) -> bool:
        return not self.coordinates(f)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealInA):
            return NotImplemented
        return self.algebra is other.algebra and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self) -> str:
        return f"<IdealInA {self}>"


class InfinitesimalNeighborhood:
    def __init__(self, order: int, ideal: IdealInA) -> None:
        self.order = order
        self.ideal = ideal

    @property
    def colength(self) -> int:
        return self.ideal.colength

    def __repr__(self) -> str:
        return (
            f"<InfinitesimalNeighborhood n={self.order} "
            f"colength={self.colength}>"
        )


def _as_ring(variables, field: Field) -> PolynomialRing:
    if isinstance(variables, PolynomialRing):
        return variables
    return PolynomialRing(field, tuple(variables))


def _as_polynomials(ring: PolynomialRing, generators) -> List[Polynomial]:
    from flatlab._parsing import parse_polynomial

    polynomials = []
    for generator in generators:
        if isinstance(generator, str):
            polynomials.append(parse_polynomial(generator, ring))
        elif isinstance(generator, Polynomial):
            polynomials.append(ring.embed(generator))
        else:
            polynomials.append(ring.constant(generator))
    return polynomials


def make_local_algebra(
    variables, generators, *, field: Field = QQ
) -> LocalAlgebra:
    """
    Builds ``k[variables]/(generators)``.  Returns an `ArtinAlgebra` when the
    quotient is finite dimensional and a plain `LocalAlgebra` otherwise.
    """
    ring = _as_ring(variables, field)
    polynomials = _as_polynomials(ring, generators)
    for polynomial in polynomials:
        if polynomial.constant_term() != 0:
            raise NotLocalAtOriginError(
                f"generator {polynomial} does not vanish at the origin",
                generator=polynomial,
            )

    basis = ideal_basis(polynomials, ring)
    try:
        standard = [m for _, m in standard_monomials(basis, 1)]
    except InfiniteDimensionalError:
        logger.debug("k[%s]/J is not Artinian", ",".join(ring.variables))
        return LocalAlgebra(ring, polynomials, basis)

    # A finite quotient with no constant generator can still have points
    # away from the origin; y_i must be nilpotent for it to be local.
    length = len(standard)
    for index in range(ring.nvars):
        power = ring.monomial(Monomial.variable(ring.nvars, index)) ** length
        if not reduce_polynomial(power, basis).is_zero():
            raise NotLocalAtOriginError(
                f"{ring.variables[index]} is not nilpotent modulo the "
                "defining ideal, so the quotient has points away from the "
                "origin",
                generator=power,
            )

    return ArtinAlgebra(ring, polynomials, basis, standard)


def make_algebra(variables, generators, *, field: Field = QQ) -> ArtinAlgebra:
    algebra = make_local_algebra(variables, generators, field=field)
    if not algebra.is_artinian:
        raise NotArtinianError(
            f"k[{', '.join(algebra.variables)}]/J is infinite dimensional"
        )
    return algebra


def colength(algebra: LocalAlgebra, ideal: IdealInA) -> int:
    if ideal.algebra is not algebra:
        ideal = IdealInA(algebra, ideal.generators)
    return ideal.colength


def infinitesimal_neighborhood(
    algebra: LocalAlgebra, n: int
) -> InfinitesimalNeighborhood:
    if n < 0:
        raise ValueError("neighbourhood order must be non-negative")
    return InfinitesimalNeighborhood(n, algebra.maximal_ideal_power(n + 1))


def _down_sets(elements: List[Monomial]) -> Iterable[frozenset]:
    """
    Every subset of `elements` closed under division that contains 1.
    `elements` must be closed under division and sorted by degree.
    """

    def _divisors(monomial):
        for index, exponent in enumerate(monomial):
            if exponent:
                yield Monomial(
                    e - 1 if i == index else e for i, e in enumerate(monomial)
                )

    def _walk(position, chosen):
        if position == len(elements):
            yield frozenset(chosen)
            return
        monomial = elements[position]
        yield from _walk(position + 1, chosen)
        if all(divisor in chosen for divisor in _divisors(monomial)):
            chosen.add(monomial)
            yield from _walk(position + 1, chosen)
            chosen.remove(monomial)

    one = elements[0]
    yield from _walk(1, {one})


def _border(down_set: frozenset, nvars: int) -> List[Monomial]:
    """
    Minimal monomials outside a finite down-closed set.
    """
    border = set()
    for monomial in down_set:
        for index in range(nvars):
            candidate = monomial.mul(Monomial.variable(nvars, index))
            if candidate in down_set:
                continue
            if all(
                Monomial(
                    e - 1 if i == j else e for i, e in enumerate(candidate)
                )
                in down_set
                for j, exponent in enumerate(candidate)
                if exponent
            ):
                border.add(candidate)
    return sorted(border, key=lambda m: (m.degree, tuple(m)))


def enumerate_monomial_ideals(
    algebra: ArtinAlgebra, c: int
) -> List[IdealInA]:
    """
    All ideals of `algebra` generated by monomials with colength exactly `c`.
    """
    if c < 1 or c > algebra.length:
        return []

    ring = algebra.ring
    # Ideals of colength c contain m^c, so only monomials of degree < c that
    # are nonzero in the algebra can lie outside them.
    candidates = [
        monomial
        for monomial in monomials_below(algebra.nvars, c)
        if not algebra.reduce(ring.monomial(monomial)).is_zero()
    ]

    found: Dict[Tuple, IdealInA] = {}
    for down_set in _down_sets(candidates):
        if len(down_set) < c:
            continue
        generators = [
            ring.monomial(monomial)
            for monomial in _border(down_set, algebra.nvars)
            if not algebra.reduce(ring.monomial(monomial)).is_zero()
        ]
        ideal = IdealInA(algebra, generators)
        if ideal.colength != c:
            continue
        found.setdefault(ideal.key(), ideal)

    logger.debug(
        "%d monomial ideals of colength %d in %r", len(found), c, algebra
    )
    return list(found.values())


def random_ideal(
    algebra: ArtinAlgebra, rng, *, max_generators: int = 2
) -> Optional[IdealInA]:
    """
    A random ideal generated by k-combinations of the standard monomials of
    positive degree.  Returns None for algebras equal to the base field.
    """
    positive = [m for m in algebra.standard_basis if m.degree > 0]
    if not positive:
        return None
    ring = algebra.ring
    field = algebra.field
    generators = []
    for _ in range(rng.randint(1, max_generators)):
        terms = {
            monomial: field.random_element(rng)
            for monomial in rng.sample(positive, rng.randint(1, len(positive)))
        }
        generator = Polynomial(ring, terms)
        if generator:
            generators.append(generator)
    return IdealInA(algebra, generators)
