"""
Exact rank computations for the brute-force oracles.

Rows are sparse mappings from column labels to field elements.  Rational
matrices are scaled to integer rows and reduced by fraction-free (Bareiss)
elimination, prime-field matrices by ordinary elimination modulo p.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence

from flatlab._scalars import Field

Row = Mapping[Hashable, object]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _integer_row(row: Sequence[object]) -> List[int]:
    fractions = [Fraction(value) for value in row]
    scale = functools.reduce(
        _lcm, (value.denominator for value in fractions), 1
    )
    return [int(value * scale) for value in fractions]


def _bareiss_rank(matrix: List[List[int]], ncols: int) -> int:
    rows = [row for row in matrix if any(row)]
    rank = 0
    previous = 1
    for col in range(ncols):
        pivot = None
        for index in range(rank, len(rows)):
            if rows[index][col]:
                pivot = index
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pivot_row = rows[rank]
        pivot_value = pivot_row[col]
        for index in range(rank + 1, len(rows)):
            row = rows[index]
            factor = row[col]
            for j in range(col + 1, ncols):
                row[j] = (
                    pivot_value * row[j] - factor * pivot_row[j]
                ) // previous
            row[col] = 0
        previous = pivot_value
        rank += 1
        if rank == len(rows):
            break
    return rank


def _modular_rank(matrix: List[List[int]], ncols: int, p: int) -> int:
    rows = [[value % p for value in row] for row in matrix]
    rows = [row for row in rows if any(row)]
    rank = 0
    for col in range(ncols):
        pivot = None
        for index in range(rank, len(rows)):
            if rows[index][col]:
                pivot = index
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pivot_row = rows[rank]
        inverse = pow(pivot_row[col], -1, p)
        for index in range(rank + 1, len(rows)):
            row = rows[index]
            factor = row[col] * inverse % p
            if not factor:
                continue
            for j in range(col, ncols):
                row[j] = (row[j] - factor * pivot_row[j]) % p
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank(rows: Iterable[Row], field: Field) -> int:
    """
    Returns the rank of the matrix whose rows are the given sparse vectors.
    """
    rows = [row for row in rows if any(value != 0 for value in row.values())]
    if not rows:
        return 0

    columns: Dict[Hashable, int] = {}
    for row in rows:
        for label, value in row.items():
            if value != 0 and label not in columns:
                columns[label] = len(columns)
    ncols = len(columns)

    dense = []
    for row in rows:
        vector = [0] * ncols
        for label, value in row.items():
            if value != 0:
                vector[columns[label]] = value
        dense.append(vector)

    if field.characteristic == 0:
        return _bareiss_rank([_integer_row(row) for row in dense], ncols)
    return _modular_rank(dense, ncols, field.characteristic)
