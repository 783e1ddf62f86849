"""
A seeded corpus of problems over a fixed family of local Artinian algebras.

Instances come in two kinds: cokernels of random matrices, which are
usually not flat, and free modules disguised by a relation column that
contains a unit.
"""

from __future__ import annotations

import logging
import random
from typing import List, Sequence, Tuple

from flatlab._artin import ArtinAlgebra, make_algebra
from flatlab._monomials import Monomial, monomials_below
from flatlab._parsing import (
    ModuleDeclaration,
    ProblemFile,
    RingDeclaration,
    affine_ring,
    parse_polynomials,
    print_problem,
)
from flatlab._polynomials import Polynomial, PolynomialRing
from flatlab._scalars import QQ, Field, PrimeField

logger = logging.getLogger(__name__)

# (variables, defining ideal); lengths 2 to 12.
FIXTURE_ALGEBRAS: Tuple[Tuple[Tuple[str, ...], str], ...] = (
    (("y",), "y^2"),
    (("y",), "y^3"),
    (("y",), "y^4"),
    (("y",), "y^5"),
    (("y",), "y^6"),
    (("y",), "y^8"),
    (("y",), "y^12"),
    (("y", "z"), "y^2, y*z, z^2"),
    (("y", "z"), "y^2, z^2"),
    (("y", "z"), "y*z, y^2 - z^2"),
    (("y", "z"), "y^3, y*z, z^3"),
    (("y", "z"), "y^2 - z^3, y*z"),
    (("y", "z"), "y^3, z^2"),
    (("y", "z"), "y^2, z^4"),
    (("y", "z"), "y^3, z^3"),
    (("y", "z", "w"), "y^2, z^2, w^2, y*z, y*w, z*w"),
    (("y", "z", "w"), "y*z, y*w, z*w, y^2 - z^2, y^2 - w^2"),
    (("y", "z", "w"), "y^2, z^2, w^2, y*z*w"),
    (("y", "z", "w"), "y^2, z^2, w^2"),
    (("y", "z", "w"), "y^2, z^2, w^3"),
)

MAX_GENERATORS = 3
MAX_RELATIONS = 4

_FIELDS: Sequence[Field] = (QQ, QQ, QQ, PrimeField(5))


def fixture_declaration(
    index: int, field: Field = QQ
) -> RingDeclaration:
    variables, generators = FIXTURE_ALGEBRAS[index]
    ring = affine_ring(field, variables)
    return RingDeclaration(
        "A", variables, tuple(parse_polynomials(generators, ring))
    )


def fixture_algebra(index: int, field: Field = QQ) -> ArtinAlgebra:
    declaration = fixture_declaration(index, field)
    return make_algebra(
        declaration.variables, declaration.generators, field=field
    )


def _random_entry(
    rng: random.Random, ring: PolynomialRing, *, unit: bool = False
) -> Polynomial:
    field = ring.field
    monomials = [m for m in monomials_below(ring.nvars, 3) if m.degree > 0]
    terms = {
        monomial: field(rng.choice((-2, -1, 1, 2)))
        for monomial in rng.sample(monomials, rng.randint(1, 2))
    }
    if unit:
        terms[Monomial.one(ring.nvars)] = field(rng.choice((-1, 1, 2)))
    return Polynomial(ring, terms)


def _random_column(
    rng: random.Random, ring: PolynomialRing, rank: int
) -> Tuple[Polynomial, ...]:
    return tuple(
        ring.zero() if rng.random() < 0.3 else _random_entry(rng, ring)
        for _ in range(rank)
    )


def _unimodular_column(
    rng: random.Random, ring: PolynomialRing, rank: int
) -> Tuple[Polynomial, ...]:
    column = list(_random_column(rng, ring, rank))
    column[rng.randrange(rank)] = _random_entry(rng, ring, unit=True)
    return tuple(column)


def random_problem(rng: random.Random, index: int) -> ProblemFile:
    field = rng.choice(_FIELDS)
    fixture = rng.randrange(len(FIXTURE_ALGEBRAS))
    declaration = fixture_declaration(fixture, field)
    ring = affine_ring(field, declaration.variables)

    if rng.random() < 0.3:
        # coker of a column with a unit entry is free of rank one less
        rank = rng.randint(2, MAX_GENERATORS)
        relations = [_unimodular_column(rng, ring, rank)]
    else:
        rank = rng.randint(1, MAX_GENERATORS)
        relations = [
            _random_column(rng, ring, rank)
            for _ in range(rng.randint(0, MAX_RELATIONS))
        ]

    logger.debug(
        "corpus instance %d: algebra %d, rank %d, %d relations",
        index,
        fixture,
        rank,
        len(relations),
    )
    return ProblemFile(
        field=field,
        ring=declaration,
        module=ModuleDeclaration("M", "A", rank, tuple(relations)),
    )


def generate_corpus(seed: int = 0, count: int = 200) -> List[str]:
    """
    Problem texts for `count` seeded random instances.  The same seed always
    gives the same texts.
    """
    rng = random.Random(seed)
    texts = []
    for index in range(count):
        problem = random_problem(rng, index)
        header = f"# corpus seed {seed}, instance {index}\n"
        texts.append(header + print_problem(problem))
    return texts
