import random
from fractions import Fraction

import pytest

from flatlab import (
    GradedModule,
    InhomogeneousRelationError,
    NotArtinianError,
    RankMismatchError,
    WindowTooSmallError,
    graded_piece_dim,
    hilbert_table,
    make_algebra,
    make_local_algebra,
    projective_flat_verdict,
    varpi_projective,
)
from flatlab._criterion import FLAT, NOT_FLAT
from flatlab._graded import (
    brute_force_graded_piece_dim,
    default_window,
    format_hilbert_polynomial,
    interpolate,
    regularity_bound,
)


@pytest.fixture
def dual_numbers():
    return make_algebra(["e"], ["e^2"])


@pytest.fixture
def line(dual_numbers):
    return GradedModule(dual_numbers, ["x0", "x1"], [0], [["e*x0"]])


def test_free_module_is_flat(dual_numbers):
    G = GradedModule(dual_numbers, ["x0", "x1"], [0])

    verdict = projective_flat_verdict(G)

    assert verdict.status == FLAT
    assert [p.coefficients for p in verdict.evidence.polynomials] == [
        (1, 1),
        (1, 1),
    ]


def test_embedded_point_is_not_flat(line):
    verdict = projective_flat_verdict(line)

    assert verdict.status == NOT_FLAT
    assert verdict.witness.n == 1
    assert verdict.witness.expected.coefficients == (1, 1)
    assert verdict.witness.actual.coefficients == (1, Fraction(1, 2))


def test_hilbert_table(line):
    table = hilbert_table(line, 1, (0, 4))

    assert table.values == (2, 3, 4, 5, 6)
    assert table.stabilized
    assert table.threshold == 0
    assert table.polynomial == (2, 1)
    assert table.value(3) == 5


def test_varpi_polynomial(line):
    polynomial = varpi_projective(line, 1, (0, 4))

    assert polynomial.coefficients == (1, Fraction(1, 2))
    assert polynomial(4) == 3
    assert str(polynomial) == "1/2*m + 1"


def test_window_too_small(line):
    with pytest.raises(WindowTooSmallError) as exc_info:
        hilbert_table(line, 1, (0, 1))
    assert exc_info.value.n == 1
    assert exc_info.value.window == (0, 1)

    assert not hilbert_table(line, 1, (0, 1), strict=False).stabilized


def test_default_window(line):
    low, high = default_window(line, 1)

    assert low == 0
    assert high >= 1 + line.projective_dimension + 2


def test_projective_space_over_the_field():
    point = make_algebra([], [])
    G = GradedModule(point, ["x0", "x1", "x2"], [0], [["x0"]])

    verdict = projective_flat_verdict(G)

    assert verdict.status == FLAT
    assert verdict.evidence.polynomials[0].coefficients == (1, 1)


@pytest.mark.parametrize(
    "degrees, relations",
    [
        ([0], [["e*x0"]]),
        ([0, 1], [["x0", "e"]]),
        ([-1], []),
        ([0, 0], [["e*x1", "x1 - x0"]]),
    ],
)
def test_piece_dims_against_elimination(dual_numbers, degrees, relations):
    G = GradedModule(dual_numbers, ["x0", "x1"], degrees, relations)

    for n in range(dual_numbers.nil_index):
        for m in range(-1, 5):
            assert graded_piece_dim(G, n, m) == brute_force_graded_piece_dim(
                G, n, m
            )


def test_shifted_free_module():
    point = make_algebra([], [])
    G = GradedModule(point, ["x0", "x1"], [-1])

    assert [graded_piece_dim(G, 0, m) for m in range(-2, 2)] == [0, 1, 2, 3]
    assert default_window(G, 0)[0] == -1


def test_inhomogeneous_relation(dual_numbers):
    with pytest.raises(InhomogeneousRelationError) as exc_info:
        GradedModule(dual_numbers, ["x0", "x1"], [0], [["x0 + e"]])
    assert exc_info.value.column == 0


def test_rank_mismatch(dual_numbers):
    with pytest.raises(RankMismatchError):
        GradedModule(dual_numbers, ["x0", "x1"], [0, 1], [["x0"]])


def test_base_must_be_artinian():
    node = make_local_algebra(["y", "z"], ["y*z"])
    G = GradedModule(node, ["x0", "x1"], [0])

    with pytest.raises(NotArtinianError):
        projective_flat_verdict(G)


def test_interpolate():
    assert interpolate([1, 4, 9, 16], 1, 2) == (0, 0, 1)
    assert interpolate([5, 5, 5], 0, 0) == (5,)


@pytest.mark.parametrize(
    "coefficients, expected",
    [
        ((), "0"),
        ((1, 1), "m + 1"),
        ((Fraction(1, 2), 0, Fraction(-3, 2)), "-3/2*m^2 + 1/2"),
    ],
)
def test_format_hilbert_polynomial(coefficients, expected):
    assert format_hilbert_polynomial(coefficients) == expected


@pytest.fixture
def point():
    return make_algebra([], [])


def test_finite_length_module(point):
    G = GradedModule(point, ["x0", "x1"], [0], [["x0^4"], ["x1^4"]])

    assert regularity_bound(G, 0) == 7
    assert default_window(G, 0) == (0, 11)

    table = hilbert_table(G, 0)

    assert table.values[:8] == (1, 2, 3, 4, 3, 2, 1, 0)
    assert table.stabilized
    assert table.threshold == 7
    assert table.polynomial == ()


def test_falling_stretch_is_not_stable(point):
    G = GradedModule(point, ["x0", "x1"], [0], [["x0^4"], ["x1^4"]])

    with pytest.raises(WindowTooSmallError):
        hilbert_table(G, 0, (0, 6))
    assert not hilbert_table(G, 0, (0, 6), strict=False).stabilized


def test_finite_length_over_dual_numbers(dual_numbers):
    G = GradedModule(dual_numbers, ["x0", "x1"], [0], [["x0^5"], ["x1^4"]])

    for n in range(dual_numbers.nil_index):
        assert hilbert_table(G, n).polynomial == ()
    assert projective_flat_verdict(G).status == FLAT


def _monomial(e, a, b):
    factors = [
        text
        for text, exponent in (("e", e), (f"x0^{a}", a), (f"x1^{b}", b))
        if exponent
    ]
    return "*".join(factors)


def test_default_window_matches_wide_window(dual_numbers):
    rng = random.Random(5)
    for _ in range(60):
        relations = []
        for _ in range(rng.randint(1, 3)):
            relation = _monomial(
                rng.randint(0, 1), rng.randint(0, 5), rng.randint(0, 5)
            )
            if relation:
                relations.append([relation])
        G = GradedModule(dual_numbers, ["x0", "x1"], [0], relations)

        for n in range(dual_numbers.nil_index):
            table = hilbert_table(G, n)
            wide = hilbert_table(G, n, (0, 40))
            assert table.polynomial == wide.polynomial
            if table.polynomial:
                assert table.polynomial[-1] > 0


def test_conic(point):
    G = GradedModule(point, ["x0", "x1", "x2"], [0], [["x0^2 + x1*x2"]])

    for m in range(7):
        assert graded_piece_dim(G, 0, m) == brute_force_graded_piece_dim(
            G, 0, m
        )
    table = hilbert_table(G, 0, (0, 6))

    assert table.values == (1, 3, 5, 7, 9, 11, 13)
    assert table.polynomial == (1, 2)
