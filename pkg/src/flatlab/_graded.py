"""
Graded modules over ``A[x_0..x_N]`` and their Hilbert functions over the
infinitesimal neighbourhoods of the closed point of the base.
"""

from __future__ import annotations

import dataclasses
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from flatlab._artin import ArtinAlgebra, LocalAlgebra, _as_polynomials
from flatlab._criterion import (
    FLAT,
    NOT_FLAT,
    FlatnessVerdict,
    Witness,
)
from flatlab._exceptions import (
    InhomogeneousRelationError,
    NotArtinianError,
    RankMismatchError,
    WindowTooSmallError,
)
from flatlab._groebner import FreeModuleElement, GroebnerBasis, buchberger
from flatlab._linalg import rank as matrix_rank
from flatlab._monomials import (
    Monomial,
    MonomialOrder,
    monomials_below,
    monomials_of_degree,
)
from flatlab._polynomials import Polynomial, PolynomialRing

logger = logging.getLogger(__name__)


def graded_ring(
    field, variables: Sequence[str], xvars: Sequence[str]
) -> PolynomialRing:
    """
    ``k[y, x]`` with the base variables first, ordered so that the x-block
    dominates.
    """
    return PolynomialRing(
        field,
        tuple(variables) + tuple(xvars),
        MonomialOrder("block", len(variables)),
    )


class GradedModule:
    """
    The cokernel of a matrix over ``A[x]`` whose generators sit in degrees
    `degrees`.  Every relation column is homogeneous in the x-variables once
    the generator degrees are taken into account.
    """

    def __init__(
        self,
        base: LocalAlgebra,
        xvars: Sequence[str],
        degrees: Sequence[int],
        relations=(),
        *,
        name: str = "G",
    ) -> None:
        self.base = base
        self.xvars = tuple(xvars)
        self.degrees = tuple(degrees)
        self.name = name
        self.ring = graded_ring(base.field, base.variables, self.xvars)

        columns = []
        for index, relation in enumerate(relations):
            if isinstance(relation, FreeModuleElement):
                entries = list(relation.components)
            else:
                entries = _as_polynomials(self.ring, relation)
            if len(entries) != self.rank:
                raise RankMismatchError(
                    f"relation has {len(entries)} entries for {self.rank} "
                    "generators",
                    expected=self.rank,
                    actual=len(entries),
                )
            column = FreeModuleElement(self.ring, entries)
            if len(self._shifted_degrees(column)) > 1:
                raise InhomogeneousRelationError(
                    f"relation {index} is not homogeneous in "
                    + ", ".join(self.xvars),
                    column=index,
                )
            columns.append(column)
        self.relations: Tuple[FreeModuleElement, ...] = tuple(columns)
        self._bases: Dict[int, GroebnerBasis] = {}

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def x_count(self) -> int:
        return len(self.xvars)

    @property
    def projective_dimension(self) -> int:
        return self.x_count - 1

    def x_degree(self, monomial: Monomial) -> int:
        return sum(monomial[self.base.nvars :])

    def _shifted_degrees(self, column: FreeModuleElement) -> set:
        return {
            self.degrees[index] + self.x_degree(monomial)
            for (index, monomial) in column.terms()
        }

    def neighbourhood_basis(self, n: int) -> GroebnerBasis:
        """
        Groebner basis of the relations together with ``(J + m^(n+1)) e_i``.
        """
        if n not in self._bases:
            ideal = self.base.maximal_ideal_power(n + 1)
            polynomials = [
                self.ring.embed(g.components[0])
                for g in ideal.basis.generators
            ]
            gens = list(self.relations) + [
                FreeModuleElement.unit(self.ring, self.rank, index, g)
                for g in polynomials
                for index in range(self.rank)
            ]
            self._bases[n] = buchberger(gens, ring=self.ring, rank=self.rank)
            logger.debug(
                "graded basis at order %d has %d elements",
                n,
                len(self._bases[n]),
            )
        return self._bases[n]

    def __repr__(self) -> str:
        return (
            f"<GradedModule {self.name}: degrees {list(self.degrees)} over "
            f"{self.base!r}[{', '.join(self.xvars)}]>"
        )


def _split_monomial(monomial: Monomial, ny: int) -> Tuple[Monomial, Monomial]:
    return Monomial(monomial[:ny]), Monomial(monomial[ny:])


def graded_piece_dim(GM: GradedModule, n: int, m: int) -> int:
    """
    ``dim_k`` of the degree-`m` part of ``M (x)_A A/m^(n+1)``.
    """
    if GM.rank == 0:
        return 0
    gb = GM.neighbourhood_basis(n)
    leads: Dict[int, List[Monomial]] = {i: [] for i in range(GM.rank)}
    for (component, monomial), _ in gb.leading_terms:
        leads[component].append(monomial)

    ny = GM.base.nvars
    count = 0
    for component, degree in enumerate(GM.degrees):
        blocking = leads[component]
        for x_part in monomials_of_degree(GM.x_count, m - degree):
            for y_part in monomials_below(ny, n + 1):
                monomial = Monomial(tuple(y_part) + tuple(x_part))
                if not any(lead.divides(monomial) for lead in blocking):
                    count += 1
    return count


def brute_force_graded_piece_dim(GM: GradedModule, n: int, m: int) -> int:
    """
    The same dimension by elimination on the explicit degree-`m` basis of
    the free module over ``A/m^(n+1)``; no Groebner basis over ``k[y, x]``.
    """
    ideal = GM.base.maximal_ideal_power(n + 1)
    base_ring = GM.base.ring
    ny = GM.base.nvars

    ambient = sum(
        ideal.colength
        * len(list(monomials_of_degree(GM.x_count, m - degree)))
        for degree in GM.degrees
    )
    if ambient == 0:
        return 0

    basis = [base_ring.monomial(b) for b in ideal.quotient_basis()]
    rows = []
    for column in GM.relations:
        shifted = GM._shifted_degrees(column)
        if not shifted:
            continue
        (column_degree,) = shifted
        for x_part in monomials_of_degree(GM.x_count, m - column_degree):
            for b in basis:
                row = {}
                for index, entry in enumerate(column.components):
                    pieces: Dict[Monomial, Dict[Monomial, object]] = {}
                    for monomial, value in entry.items():
                        y, x = _split_monomial(monomial, ny)
                        pieces.setdefault(x.mul(x_part), {})[y] = value
                    for x, terms in pieces.items():
                        y_polynomial = b * Polynomial(base_ring, terms)
                        coordinates = ideal.coordinates(y_polynomial)
                        for y, value in coordinates.items():
                            row[(index, y, x)] = value
                if row:
                    rows.append(row)
    return ambient - matrix_rank(rows, GM.base.field)


def regularity_bound(GM: GradedModule, n: int) -> int:
    """
    A degree from which ``h(n, m)`` agrees with its Hilbert polynomial.

    Counting standard monomials by inclusion-exclusion over the leading
    monomials of component `i` gives binomials ``C(m - d_i - a + N, N)``,
    each polynomial in `m` once ``m >= d_i + a - N``, where `a` is the
    degree of an lcm of x-parts.  Every such lcm divides the lcm of all of
    them.
    """
    if GM.rank == 0:
        return 0
    ny = GM.base.nvars
    exponents = [[0] * GM.x_count for _ in GM.degrees]
    for (component, monomial), _ in GM.neighbourhood_basis(n).leading_terms:
        row = exponents[component]
        for index, exponent in enumerate(monomial[ny:]):
            row[index] = max(row[index], exponent)
    return (
        max(degree + sum(row) for degree, row in zip(GM.degrees, exponents))
        - GM.projective_dimension
    )


def _points_needed(GM: GradedModule) -> int:
    # N + 2 vanishing (N+1)-st differences span 2N + 3 values.
    return 2 * GM.x_count + 1


def default_window(GM: GradedModule, n: int) -> Tuple[int, int]:
    """
    ``[min(0, min d_i), D]`` where `D` is the largest shifted degree among
    the Groebner basis elements and the generators, plus ``N + 2``, pushed
    up until the window holds ``2N + 3`` values past `regularity_bound`.
    """
    low = min((0, *GM.degrees))
    top = max((0, *GM.degrees))
    for element in GM.neighbourhood_basis(n).generators:
        top = max(top, *GM._shifted_degrees(element))
    high = max(
        top + GM.projective_dimension + 2,
        max(low, regularity_bound(GM, n)) + _points_needed(GM) - 1,
    )
    return low, high


@dataclasses.dataclass(frozen=True)
class HilbertTable:
    n: int
    window: Tuple[int, int]
    values: Tuple[int, ...]
    stabilized: bool
    threshold: Optional[int] = None
    polynomial: Optional[Tuple[Fraction, ...]] = None

    def value(self, m: int) -> int:
        return self.values[m - self.window[0]]


def _differences(values: Sequence[int], order: int) -> List[int]:
    for _ in range(order):
        values = [b - a for a, b in zip(values, values[1:])]
    return list(values)


def _stable_start(
    values: Sequence[int], order: int, needed: int
) -> Optional[int]:
    """
    Index of the first value of the longest suffix on which the differences
    of the given order vanish, or None if it holds fewer than `needed`
    values.
    """
    differences = _differences(values, order)
    start = len(differences)
    while start > 0 and differences[start - 1] == 0:
        start -= 1
    if len(values) - start < needed:
        return None
    return start


def _polynomial_multiply(
    a: Sequence[Fraction], b: Sequence[Fraction]
) -> List[Fraction]:
    result = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            result[i + j] += x * y
    return result


def interpolate(values: Sequence[int], start: int, degree: int):
    """
    Newton forward-difference interpolation through ``values[k]`` at
    ``m = start + k``.  Returns coefficients in ascending powers of `m`,
    without trailing zeros.
    """
    coefficients = [Fraction(0)] * (degree + 1)
    binomial = [Fraction(1)]
    for k in range(degree + 1):
        leading = _differences(values, k)[0]
        for power, coefficient in enumerate(binomial):
            coefficients[power] += leading * coefficient
        # C(m - start, k + 1) = C(m - start, k) * (m - start - k) / (k + 1)
        binomial = _polynomial_multiply(
            binomial,
            [Fraction(-start - k, k + 1), Fraction(1, k + 1)],
        )
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


def hilbert_table(
    GM: GradedModule,
    n: int,
    window: Optional[Tuple[int, int]] = None,
    *,
    strict: bool = True,
) -> HilbertTable:
    """
    Tabulates ``h(n, m)`` over the window and recovers the Hilbert
    polynomial once the ``(N+1)``-st differences vanish at ``N + 2``
    consecutive points past `regularity_bound`.

    Raises `WindowTooSmallError` when the window ends too early, unless
    `strict` is false.
    """
    window = window or default_window(GM, n)
    low, high = window
    values = tuple(graded_piece_dim(GM, n, m) for m in range(low, high + 1))
    order = GM.x_count
    needed = _points_needed(GM)
    start = _stable_start(values, order, needed)
    bound = max(low, regularity_bound(GM, n))
    if start is None or high - bound + 1 < needed:
        logger.debug(
            "order %d: stable from index %s, regular from m=%d",
            n,
            start,
            bound,
        )
        if strict:
            raise WindowTooSmallError(
                f"Hilbert function at order {n} does not stabilise in "
                f"{low}..{high}",
                n=n,
                window=window,
            )
        return HilbertTable(n, window, values, stabilized=False)
    polynomial = interpolate(values[start:], low + start, max(order - 1, 0))
    return HilbertTable(
        n,
        window,
        values,
        stabilized=True,
        threshold=low + start,
        polynomial=polynomial,
    )


@dataclasses.dataclass(frozen=True)
class VarpiPolynomial:
    n: int
    coefficients: Tuple[Fraction, ...]
    threshold: int

    def __call__(self, m: int) -> Fraction:
        return sum(
            (c * m**power for power, c in enumerate(self.coefficients)),
            Fraction(0),
        )

    def __str__(self) -> str:
        return format_hilbert_polynomial(self.coefficients)


def format_hilbert_polynomial(coefficients: Sequence[Fraction]) -> str:
    if not coefficients:
        return "0"
    pieces = []
    for power in reversed(range(len(coefficients))):
        coefficient = Fraction(coefficients[power])
        if coefficient == 0:
            continue
        magnitude = abs(coefficient)
        if power == 0:
            body = str(magnitude)
        else:
            body = "m" if power == 1 else f"m^{power}"
            if magnitude != 1:
                body = f"{magnitude}*{body}"
        if not pieces:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(f"- {body}" if coefficient < 0 else f"+ {body}")
    return " ".join(pieces)


def varpi_projective(
    GM: GradedModule, n: int, window: Optional[Tuple[int, int]] = None
) -> VarpiPolynomial:
    table = hilbert_table(GM, n, window)
    colength = GM.base.maximal_ideal_power(n + 1).colength
    return VarpiPolynomial(
        n,
        tuple(c / colength for c in table.polynomial),
        table.threshold,
    )


@dataclasses.dataclass(frozen=True)
class GradedProfile:
    module: GradedModule
    tables: Tuple[HilbertTable, ...]
    polynomials: Tuple[VarpiPolynomial, ...]


def projective_flat_verdict(
    GM: GradedModule, window: Optional[Tuple[int, int]] = None
) -> FlatnessVerdict:
    """
    Flat exactly when the varpi polynomial is the same at every order below
    the nilpotency index of the base.
    """
    base = GM.base
    if not isinstance(base, ArtinAlgebra):
        raise NotArtinianError(
            "the projective criterion needs an Artinian base"
        )
    tables = []
    polynomials = []
    for n in range(base.nil_index):
        table = hilbert_table(GM, n, window)
        colength = base.maximal_ideal_power(n + 1).colength
        tables.append(table)
        polynomials.append(
            VarpiPolynomial(
                n,
                tuple(c / colength for c in table.polynomial),
                table.threshold,
            )
        )
    profile = GradedProfile(GM, tuple(tables), tuple(polynomials))

    expected = polynomials[0]
    for polynomial in polynomials[1:]:
        if polynomial.coefficients != expected.coefficients:
            return FlatnessVerdict(
                NOT_FLAT,
                profile,
                Witness(expected=expected, actual=polynomial, n=polynomial.n),
            )
    return FlatnessVerdict(FLAT, profile)
