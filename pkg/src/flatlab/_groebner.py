"""
Buchberger's algorithm for submodules of free modules over a polynomial ring.

Module elements are handled internally as dictionaries mapping
``(component, monomial)`` terms to coefficients; `FreeModuleElement` is the
public, immutable wrapper.  Ideals are submodules of rank one.
"""

from __future__ import annotations

import dataclasses
import logging
from typing import Dict, Iterable, List, Sequence, Set, Tuple

from flatlab._exceptions import InfiniteDimensionalError, RankMismatchError
from flatlab._monomials import Monomial, ModuleOrder
from flatlab._polynomials import Polynomial, PolynomialRing

logger = logging.getLogger(__name__)

Term = Tuple[int, Monomial]
Vector = Dict[Term, object]


class FreeModuleElement:
    __slots__ = ("ring", "components")

    def __init__(
        self, ring: PolynomialRing, components: Iterable[Polynomial]
    ) -> None:
        self.ring = ring
        self.components: Tuple[Polynomial, ...] = tuple(
            ring.embed(component) for component in components
        )

    @classmethod
    def from_terms(
        cls, ring: PolynomialRing, rank: int, terms: Vector
    ) -> FreeModuleElement:
        buckets: List[Dict[Monomial, object]] = [{} for _ in range(rank)]
        for (component, monomial), coefficient in terms.items():
            buckets[component][monomial] = coefficient
        return cls(ring, (Polynomial(ring, bucket) for bucket in buckets))

    @classmethod
    def unit(
        cls, ring: PolynomialRing, rank: int, index: int, scalar=None
    ) -> FreeModuleElement:
        scalar = ring.one() if scalar is None else scalar
        return cls(
            ring,
            (scalar if i == index else ring.zero() for i in range(rank)),
        )

    @property
    def rank(self) -> int:
        return len(self.components)

    def terms(self) -> Vector:
        return {
            (index, monomial): coefficient
            for index, component in enumerate(self.components)
            for monomial, coefficient in component.items()
        }

    def is_zero(self) -> bool:
        return all(component.is_zero() for component in self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        inner = ", ".join(str(component) for component in self.components)
        return f"<FreeModuleElement ({inner})>"


@dataclasses.dataclass(frozen=True)
class GroebnerBasis:
    ring: PolynomialRing
    rank: int
    generators: Tuple[FreeModuleElement, ...]
    order: ModuleOrder
    reduced: bool = True

    @property
    def leading_terms(self) -> List[Tuple[Term, object]]:
        return [_leading(g.terms(), self.order) for g in self.generators]

    def is_unit(self) -> bool:
        """
        True if the submodule is the whole free module.
        """
        leads = {term for term, _ in self.leading_terms}
        one = Monomial.one(self.ring.nvars)
        return all((index, one) in leads for index in range(self.rank))

    def __len__(self) -> int:
        return len(self.generators)


def _leading(vector: Vector, order: ModuleOrder) -> Tuple[Term, object]:
    term = max(vector, key=order.key)
    return term, vector[term]


def _reduce(
    vector: Vector,
    basis: Sequence[Vector],
    leads: Sequence[Tuple[Term, object]],
    ring: PolynomialRing,
    order: ModuleOrder,
) -> Vector:
    """
    Full reduction of `vector` against `basis`: no term of the result is
    divisible by a leading term of the basis.
    """
    field = ring.field
    by_component: Dict[int, List[int]] = {}
    for index, ((component, _), _) in enumerate(leads):
        by_component.setdefault(component, []).append(index)

    work = dict(vector)
    remainder: Vector = {}
    while work:
        term = max(work, key=order.key)
        coefficient = work[term]
        component, monomial = term
        for index in by_component.get(component, ()):
            (_, lead_monomial), lead_coefficient = leads[index]
            if lead_monomial.divides(monomial):
                quotient = monomial.div(lead_monomial)
                factor = field.div(coefficient, lead_coefficient)
                for (g_component, g_monomial), g_coefficient in basis[
                    index
                ].items():
                    target = (g_component, g_monomial.mul(quotient))
                    value = field.sub(
                        work.get(target, field.zero),
                        field.mul(factor, g_coefficient),
                    )
                    if value != 0:
                        work[target] = value
                    else:
                        work.pop(target, None)
                break
        else:
            remainder[term] = coefficient
            del work[term]
    return remainder


def _monic(vector: Vector, order: ModuleOrder, ring: PolynomialRing) -> Vector:
    _, coefficient = _leading(vector, order)
    inverse = ring.field.inv(coefficient)
    return {
        term: ring.field.mul(value, inverse) for term, value in vector.items()
    }


def _spair(
    f: Vector,
    g: Vector,
    lead_f: Term,
    lead_g: Term,
    ring: PolynomialRing,
) -> Vector:
    field = ring.field
    component, monomial_f = lead_f
    _, monomial_g = lead_g
    lcm = monomial_f.lcm(monomial_g)
    shift_f = lcm.div(monomial_f)
    shift_g = lcm.div(monomial_g)
    result: Vector = {}
    for (c, m), value in f.items():
        result[(c, m.mul(shift_f))] = value
    for (c, m), value in g.items():
        target = (c, m.mul(shift_g))
        difference = field.sub(result.get(target, field.zero), value)
        if difference != 0:
            result[target] = difference
        else:
            result.pop(target, None)
    return result


def _select(
    pairs: Set[Tuple[int, int]],
    leads: Sequence[Tuple[Term, object]],
    order: ModuleOrder,
) -> Tuple[int, int]:
    """
    Normal strategy: the pair with the smallest lcm comes first.
    """

    def key(pair):
        (component, monomial_i), _ = leads[pair[0]]
        (_, monomial_j), _ = leads[pair[1]]
        return (order.key((component, monomial_i.lcm(monomial_j))), pair)

    return min(pairs, key=key)


def _update(
    pairs: Set[Tuple[int, int]],
    leads: Sequence[Tuple[Term, object]],
    new: int,
    order: ModuleOrder,
    rank_one: bool,
) -> Set[Tuple[int, int]]:
    """
    Gebauer-Moeller installation of the pairs created by basis element `new`.
    The coprime-leading-monomial criterion only applies to ideals.
    """
    (component, lead), _ = leads[new]

    kept = set()
    for i, j in pairs:
        (c_i, m_i), _ = leads[i]
        (_, m_j), _ = leads[j]
        lcm_ij = m_i.lcm(m_j)
        if (
            c_i != component
            or not lead.divides(lcm_ij)
            or lcm_ij == m_i.lcm(lead)
            or lcm_ij == m_j.lcm(lead)
        ):
            kept.add((i, j))

    groups: Dict[Monomial, List[int]] = {}
    for i in range(new):
        (c_i, m_i), _ = leads[i]
        if c_i == component:
            groups.setdefault(m_i.lcm(lead), []).append(i)

    minimal: List[Monomial] = []
    for lcm in sorted(groups, key=lambda m: order.key((component, m))):
        if all(not other.divides(lcm) for other in minimal):
            minimal.append(lcm)

    for lcm in minimal:
        group = groups[lcm]
        if rank_one and any(
            leads[i][0][1].is_coprime(lead) for i in group
        ):
            continue
        kept.add((min(group), new))

    return kept


def _minimalize(
    basis: List[Vector], order: ModuleOrder
) -> List[Vector]:
    ordered = sorted(basis, key=lambda v: order.key(_leading(v, order)[0]))
    minimal: List[Vector] = []
    minimal_leads: List[Term] = []
    for vector in ordered:
        component, monomial = _leading(vector, order)[0]
        if any(
            c == component and m.divides(monomial) for c, m in minimal_leads
        ):
            continue
        minimal.append(vector)
        minimal_leads.append((component, monomial))
    return minimal


def _interreduce(
    basis: List[Vector], ring: PolynomialRing, order: ModuleOrder
) -> List[Vector]:
    reduced = []
    for index, vector in enumerate(basis):
        others = basis[:index] + basis[index + 1 :]
        remainder = _reduce(
            vector,
            others,
            [_leading(other, order) for other in others],
            ring,
            order,
        )
        reduced.append(_monic(remainder, order, ring))
    return reduced


def _buchberger_vectors(
    vectors: Iterable[Vector],
    ring: PolynomialRing,
    rank: int,
    order: ModuleOrder,
) -> List[Vector]:
    rank_one = rank == 1
    basis: List[Vector] = []
    leads: List[Tuple[Term, object]] = []
    pairs: Set[Tuple[int, int]] = set()

    def _install(vector):
        nonlocal pairs
        vector = _monic(vector, order, ring)
        basis.append(vector)
        leads.append(_leading(vector, order))
        pairs = _update(pairs, leads, len(basis) - 1, order, rank_one)

    for vector in vectors:
        if vector:
            _install(vector)

    processed = 0
    while pairs:
        pair = _select(pairs, leads, order)
        pairs.remove(pair)
        processed += 1
        i, j = pair
        spair = _spair(basis[i], basis[j], leads[i][0], leads[j][0], ring)
        remainder = _reduce(spair, basis, leads, ring, order)
        if remainder:
            _install(remainder)

    logger.debug(
        "buchberger: rank %d, %d pairs reduced, %d basis elements before "
        "reduction",
        rank,
        processed,
        len(basis),
    )

    result = _interreduce(_minimalize(basis, order), ring, order)
    return sorted(result, key=lambda v: order.key(_leading(v, order)[0]))


def buchberger(
    gens: Sequence[FreeModuleElement],
    order: ModuleOrder | None = None,
    *,
    ring: PolynomialRing | None = None,
    rank: int | None = None,
) -> GroebnerBasis:
    """
    Computes the reduced Groebner basis of the submodule generated by `gens`.

    `ring` and `rank` only need to be passed explicitly when `gens` is empty.
    """
    if gens:
        ring = ring or gens[0].ring
        rank = gens[0].rank if rank is None else rank
    if ring is None or rank is None:
        raise ValueError(
            "ring and rank are required for an empty generator list"
        )
    for gen in gens:
        if gen.rank != rank:
            raise RankMismatchError(
                "generators live in free modules of different ranks",
                expected=rank,
                actual=gen.rank,
            )
    order = order or ModuleOrder(ring.order)

    vectors = _buchberger_vectors(
        (gen.terms() for gen in gens), ring, rank, order
    )
    return GroebnerBasis(
        ring=ring,
        rank=rank,
        generators=tuple(
            FreeModuleElement.from_terms(ring, rank, vector)
            for vector in vectors
        ),
        order=order,
    )


def ideal_basis(
    polynomials: Iterable[Polynomial],
    ring: PolynomialRing,
) -> GroebnerBasis:
    return buchberger(
        [FreeModuleElement(ring, (f,)) for f in polynomials if f],
        ModuleOrder(ring.order),
        ring=ring,
        rank=1,
    )


def normal_form(
    v: FreeModuleElement, gb: GroebnerBasis
) -> FreeModuleElement:
    if v.rank != gb.rank:
        raise RankMismatchError(
            "element and basis live in free modules of different ranks",
            expected=gb.rank,
            actual=v.rank,
        )
    basis = [g.terms() for g in gb.generators]
    leads = [_leading(vector, gb.order) for vector in basis]
    remainder = _reduce(v.terms(), basis, leads, gb.ring, gb.order)
    return FreeModuleElement.from_terms(gb.ring, gb.rank, remainder)


def reduce_polynomial(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """
    Normal form of a polynomial against an ideal basis.
    """
    return normal_form(FreeModuleElement(gb.ring, (f,)), gb).components[0]


def contains(gb: GroebnerBasis, v: FreeModuleElement) -> bool:
    return normal_form(v, gb).is_zero()


def _check_finite(gb: GroebnerBasis, rank: int) -> None:
    nvars = gb.ring.nvars
    pure: Dict[int, Set[int]] = {index: set() for index in range(rank)}
    for (component, monomial), _ in gb.leading_terms:
        support = [i for i, exponent in enumerate(monomial) if exponent]
        if not support:
            pure[component].update(range(nvars))
        elif len(support) == 1:
            pure[component].add(support[0])
    for component in range(rank):
        if len(pure[component]) < nvars:
            raise InfiniteDimensionalError(
                f"quotient is infinite dimensional in component {component}",
                component=component,
            )


def standard_monomials(
    gb: GroebnerBasis, rank: int | None = None
) -> List[Term]:
    """
    Returns all ``(component, monomial)`` pairs not divisible by a leading
    term of `gb`, sorted by component and then by increasing monomial.
    """
    rank = gb.rank if rank is None else rank
    _check_finite(gb, rank)

    nvars = gb.ring.nvars
    leads: Dict[int, List[Monomial]] = {index: [] for index in range(rank)}
    for (component, monomial), _ in gb.leading_terms:
        leads[component].append(monomial)

    result: List[Term] = []
    for component in range(rank):
        blocking = leads[component]

        def _standard(monomial):
            return not any(lead.divides(monomial) for lead in blocking)

        one = Monomial.one(nvars)
        if not _standard(one):
            continue
        seen = {one}
        frontier = [one]
        while frontier:
            following = []
            for monomial in frontier:
                for index in range(nvars):
                    candidate = monomial.mul(Monomial.variable(nvars, index))
                    if candidate not in seen and _standard(candidate):
                        seen.add(candidate)
                        following.append(candidate)
            frontier = following
        result.extend(
            (component, monomial)
            for monomial in sorted(seen, key=gb.order.base.key)
        )
    return result


def syzygy_basis(
    columns: Sequence[FreeModuleElement],
    order: ModuleOrder | None = None,
) -> List[FreeModuleElement]:
    """
    Generators of the module of relations ``sum(a_j * columns[j]) == 0`` over
    the polynomial ring.

    Each column ``c_j`` is extended to ``(c_j, e_j)`` and a basis is computed
    for an order in which the original components eliminate the new ones;
    the basis elements without original part are the syzygies.
    """
    if not columns:
        return []
    ring = columns[0].ring
    p = columns[0].rank
    q = len(columns)
    base = (order or ModuleOrder(ring.order)).base
    elimination = ModuleOrder(base, eliminate=p)

    vectors = []
    for j, column in enumerate(columns):
        if column.rank != p:
            raise RankMismatchError(
                "columns live in free modules of different ranks",
                expected=p,
                actual=column.rank,
            )
        vector = column.terms()
        vector[(p + j, Monomial.one(ring.nvars))] = ring.field.one
        vectors.append(vector)

    basis = _buchberger_vectors(vectors, ring, p + q, elimination)
    syzygies = []
    for vector in basis:
        if all(component >= p for component, _ in vector):
            shifted = {
                (component - p, monomial): value
                for (component, monomial), value in vector.items()
            }
            syzygies.append(FreeModuleElement.from_terms(ring, q, shifted))
    return syzygies
