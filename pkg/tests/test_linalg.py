import random
from fractions import Fraction

import pytest
import sympy

from flatlab import QQ, PrimeField
from flatlab._linalg import rank


def _rows(matrix):
    return [
        {column: value for column, value in enumerate(row) if value}
        for row in matrix
    ]


@pytest.mark.parametrize(
    "matrix, expected",
    [
        ([], 0),
        ([[0, 0], [0, 0]], 0),
        ([[1, 2], [2, 4]], 1),
        ([[1, 1], [1, 4]], 2),
        ([[Fraction(1, 2), 1], [1, 2], [0, 3]], 2),
    ],
)
def test_rational_rank(matrix, expected):
    assert rank(_rows(matrix), QQ) == expected


def test_rank_depends_on_characteristic():
    matrix = [[1, 1], [1, 4]]

    assert rank(_rows(matrix), QQ) == 2
    assert rank(_rows(matrix), PrimeField(3)) == 1
    assert rank(_rows(matrix), PrimeField(5)) == 2


def test_labels_need_not_be_integers():
    rows = [{("e", 0): 1, ("e", 1): 1}, {("e", 1): 1}, {("f", 0): 0}]

    assert rank(rows, QQ) == 2


@pytest.mark.parametrize("seed", range(10))
def test_rational_rank_against_sympy(seed):
    rng = random.Random(seed)
    nrows, ncols = rng.randint(1, 6), rng.randint(1, 6)
    matrix = [
        [
            Fraction(rng.randint(-3, 3), rng.choice((1, 2, 3)))
            for _ in range(ncols)
        ]
        for _ in range(nrows)
    ]
    if nrows > 2:
        matrix[-1] = [a + 2 * b for a, b in zip(matrix[0], matrix[1])]

    expected = sympy.Matrix(
        [
            [sympy.Rational(v.numerator, v.denominator) for v in row]
            for row in matrix
        ]
    ).rank()

    assert rank(_rows(matrix), QQ) == expected
