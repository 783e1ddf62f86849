import itertools
import random

import pytest

from flatlab import (
    PrimeField,
    colength,
    enumerate_monomial_ideals,
    infinitesimal_neighborhood,
    make_algebra,
    make_local_algebra,
)
from flatlab._artin import IdealInA, random_ideal
from flatlab._corpus import FIXTURE_ALGEBRAS, fixture_algebra
from flatlab._exceptions import (
    NotArtinianError,
    NotLocalAtOriginError,
    UnitIdealError,
)
from flatlab._linalg import rank
from flatlab._monomials import monomials_below, monomials_of_degree


@pytest.fixture
def square():
    return make_algebra(["y", "z"], ["y^2", "z^2"])


def test_artin_invariants(square):
    assert square.is_artinian
    assert square.length == 4
    assert square.nil_index == 3
    assert square.graded_dimensions() == [1, 2, 1]


@pytest.mark.parametrize("index", range(len(FIXTURE_ALGEBRAS)))
def test_fixture_algebras(index):
    algebra = fixture_algebra(index)

    assert 2 <= algebra.length <= 12
    assert sum(algebra.graded_dimensions()) == algebra.length
    assert algebra.maximal_ideal().colength == 1
    assert algebra.maximal_ideal_power(algebra.nil_index).colength == (
        algebra.length
    )


def test_fixture_algebras_over_prime_field():
    algebra = fixture_algebra(9, PrimeField(5))

    assert algebra.length == 4


def test_not_artinian():
    node = make_local_algebra(["y", "z"], ["y*z"])

    assert not node.is_artinian
    assert node.maximal_ideal_power(3).colength == 5
    with pytest.raises(NotArtinianError):
        make_algebra(["y", "z"], ["y*z"])


@pytest.mark.parametrize("generator", ["y - 1", "y^2 - y"])
def test_not_local(generator):
    with pytest.raises(NotLocalAtOriginError):
        make_local_algebra(["y"], [generator])


def test_power_zero_is_the_unit_ideal(square):
    with pytest.raises(UnitIdealError):
        square.maximal_ideal_power(0)


def test_units_generate_the_unit_ideal():
    algebra = make_algebra(["y"], ["y^3"])
    (y,) = algebra.ring.gens()

    with pytest.raises(UnitIdealError):
        algebra.ideal([1 + y])


def test_ideal_identity_ignores_unit_multiples():
    algebra = make_algebra(["y"], ["y^3"])
    (y,) = algebra.ring.gens()

    assert algebra.ideal([y]) == algebra.ideal([y + y**2])
    assert algebra.ideal([y]) != algebra.ideal([y**2])
    assert len({algebra.ideal([y]), algebra.ideal([y * (1 - y)])}) == 1


def test_colengths(square):
    y, z = square.ring.gens()

    assert colength(square, square.zero_ideal()) == 4
    assert colength(square, square.ideal([y])) == 2
    assert colength(square, square.ideal([y * z])) == 3
    assert infinitesimal_neighborhood(square, 1).colength == 3
    with pytest.raises(ValueError):
        infinitesimal_neighborhood(square, -1)


def test_ideal_membership(square):
    y, z = square.ring.gens()
    ideal = square.ideal([y + z])

    assert ideal.contains(y * z + z**2)
    assert ideal.contains(y * y)
    assert not ideal.contains(y)
    assert str(ideal) == "(y + z)"
    assert str(square.zero_ideal()) == "(0)"


@pytest.mark.parametrize(
    "c, expected", [(0, 0), (1, 1), (2, 2), (3, 1), (4, 1), (5, 0)]
)
def test_enumerate_monomial_ideals(square, c, expected):
    ideals = enumerate_monomial_ideals(square, c)

    assert len(ideals) == expected
    assert all(ideal.colength == c for ideal in ideals)


def test_enumerate_monomial_ideals_of_a_chain():
    algebra = make_algebra(["y"], ["y^5"])
    (y,) = algebra.ring.gens()

    for c in range(1, 6):
        (ideal,) = enumerate_monomial_ideals(algebra, c)
        assert ideal == algebra.ideal([y**c])


def test_enumerate_three_variables():
    algebra = make_algebra(["y", "z", "w"], ["y^2", "z^2", "w^2"])

    # Down-sets of size 2 are {1, v} for each variable v.
    assert len(enumerate_monomial_ideals(algebra, 2)) == 3


def test_random_ideal_is_proper():
    rng = random.Random(7)
    for index in range(len(FIXTURE_ALGEBRAS)):
        algebra = fixture_algebra(index)
        ideal = random_ideal(algebra, rng)
        assert isinstance(ideal, IdealInA)
        assert 1 <= ideal.colength <= algebra.length


def test_random_ideal_over_the_field():
    algebra = make_algebra([], [])

    assert algebra.length == 1
    assert random_ideal(algebra, random.Random(0)) is None


def _colength_by_rank(ideal):
    # J contains m^s, so k[y]/(J + I) is the span of monomials of degree
    # below s modulo the truncated multiples of the generators.
    algebra = ideal.algebra
    ring = algebra.ring
    s = algebra.nil_index
    below = list(monomials_below(algebra.nvars, s))
    rows = []
    for g in (*algebra.generators, *ideal.generators):
        for u in below:
            product = g * ring.monomial(u)
            rows.append(
                {m: c for m, c in product.items() if m.degree < s}
            )
    return len(below) - rank(rows, algebra.field)


@pytest.mark.parametrize("index", range(len(FIXTURE_ALGEBRAS)))
def test_enumerated_colengths_by_rank(index):
    algebra = fixture_algebra(index)
    ring = algebra.ring

    for c in range(1, algebra.length + 1):
        for ideal in enumerate_monomial_ideals(algebra, c):
            assert _colength_by_rank(ideal) == c
            for monomial in monomials_of_degree(algebra.nvars, c):
                assert ideal.contains(ring.monomial(monomial))


def _is_down_set(chosen):
    return all(
        divisor in chosen
        for monomial in chosen
        for divisor in itertools.product(*(range(e + 1) for e in monomial))
    )


_MONOMIAL_FIXTURES = [
    index
    for index, (_, ideal) in enumerate(FIXTURE_ALGEBRAS)
    if "-" not in ideal
]


@pytest.mark.parametrize("index", _MONOMIAL_FIXTURES)
def test_enumeration_counts_down_sets(index):
    algebra = fixture_algebra(index)
    standard = list(algebra.standard_basis)

    for c in range(1, algebra.length + 1):
        down_sets = [
            chosen
            for chosen in map(frozenset, itertools.combinations(standard, c))
            if _is_down_set(chosen)
        ]
        assert len(enumerate_monomial_ideals(algebra, c)) == len(down_sets)
