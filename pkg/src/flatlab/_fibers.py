"""
Finitely generated modules over a local algebra, given by presentations, and
the dimensions of their fibres over ideals of finite colength.

Every dimension here has two routes: a Groebner basis of a submodule of a
free module over the polynomial ring, and an explicit k-matrix whose rank is
taken by exact elimination.  The second route exists to check the first.
"""

from __future__ import annotations

import dataclasses
import logging
from typing import Iterable, List, Sequence, Tuple

from flatlab._artin import IdealInA, LocalAlgebra, make_algebra
from flatlab._exceptions import DisagreementError, RankMismatchError
from flatlab._groebner import (
    FreeModuleElement,
    buchberger,
    standard_monomials,
    syzygy_basis,
)
from flatlab._linalg import rank as matrix_rank
from flatlab._polynomials import Polynomial

logger = logging.getLogger(__name__)


class ModulePresentation:
    """
    The cokernel of a ``p x q`` matrix over the algebra.  Column `j` of the
    matrix is ``relations[j]``, a relation among the `p` generators.
    """

    def __init__(
        self,
        algebra: LocalAlgebra,
        rank: int,
        relations: Iterable = (),
        *,
        name: str = "M",
    ) -> None:
        from flatlab._artin import _as_polynomials

        self.algebra = algebra
        self.rank = rank
        self.name = name
        columns = []
        for relation in relations:
            if isinstance(relation, FreeModuleElement):
                entries = list(relation.components)
            else:
                entries = _as_polynomials(algebra.ring, relation)
            if len(entries) != rank:
                raise RankMismatchError(
                    f"relation has {len(entries)} entries for {rank} "
                    "generators",
                    expected=rank,
                    actual=len(entries),
                )
            columns.append(
                FreeModuleElement(
                    algebra.ring, (algebra.reduce(e) for e in entries)
                )
            )
        self.relations: Tuple[FreeModuleElement, ...] = tuple(columns)

    @property
    def relation_count(self) -> int:
        return len(self.relations)

    def __repr__(self) -> str:
        return (
            f"<ModulePresentation {self.name}: {self.rank} generators, "
            f"{self.relation_count} relations over {self.algebra!r}>"
        )


def free_module(algebra: LocalAlgebra, rank: int) -> ModulePresentation:
    return ModulePresentation(algebra, rank, (), name=f"A^{rank}")


def cyclic_module(algebra: LocalAlgebra, generators) -> ModulePresentation:
    """
    ``A/(generators)`` as a module with a single generator.
    """
    return ModulePresentation(
        algebra, 1, ([g] for g in generators), name="A/I"
    )


@dataclasses.dataclass(frozen=True)
class FiberDatum:
    ideal: IdealInA
    fiber_dim: int


@dataclasses.dataclass(frozen=True)
class MilneWitness:
    """
    ``ker(I (x) M -> M)`` measured twice: as ``Tor_1(A/I, M)`` and as
    ``dim(I (x) M) - dim(IM)``.
    """

    ideal: IdealInA
    tor_dim: int
    tensor_dim: int
    image_dim: int

    @property
    def kernel_dim(self) -> int:
        return self.tensor_dim - self.image_dim

    @property
    def injective(self) -> bool:
        return self.kernel_dim == 0


def _unit_multiples(
    ideal_basis_polys: Sequence[Polynomial], rank: int, ring
) -> List[FreeModuleElement]:
    return [
        FreeModuleElement.unit(ring, rank, index, g)
        for g in ideal_basis_polys
        for index in range(rank)
    ]


def _ideal_polynomials(ideal: IdealInA) -> List[Polynomial]:
    return [g.components[0] for g in ideal.basis.generators]


def fiber_dim(M: ModulePresentation, I: IdealInA) -> int:
    """
    ``dim_k(M (x) A/I)``, counted as standard monomials of the submodule
    generated by the relations together with ``(J + I) e_i``.
    """
    if M.rank == 0:
        return 0
    ring = M.algebra.ring
    gens = list(M.relations) + _unit_multiples(
        _ideal_polynomials(I), M.rank, ring
    )
    gb = buchberger(gens, ring=ring, rank=M.rank)
    return len(standard_monomials(gb, M.rank))


def fiber_data(
    M: ModulePresentation, ideals: Iterable[IdealInA]
) -> List[FiberDatum]:
    return [FiberDatum(ideal, fiber_dim(M, ideal)) for ideal in ideals]


def _expand(
    vectors: Iterable[FreeModuleElement], ideal: IdealInA
) -> List[dict]:
    """
    Rows spanning the k-span of ``b * v`` in ``(A/I)^r`` for every vector `v`
    and every basis monomial `b` of ``A/I``.
    """
    ring = ideal.algebra.ring
    basis = [ring.monomial(b) for b in ideal.quotient_basis()]
    rows = []
    for vector in vectors:
        for b in basis:
            row = {}
            for index, component in enumerate(vector.components):
                if component.is_zero():
                    continue
                coordinates = ideal.coordinates(b * component)
                for monomial, value in coordinates.items():
                    row[(index, monomial)] = value
            if row:
                rows.append(row)
    return rows


def brute_force_fiber_dim(M: ModulePresentation, I: IdealInA) -> int:
    """
    ``dim_k(M (x) A/I)`` by elimination on the explicit k-matrix of the
    relations in ``(A/I)^p``.  No module Groebner basis is involved.
    """
    if M.rank == 0:
        return 0
    ambient = M.rank * I.colength
    return ambient - matrix_rank(_expand(M.relations, I), M.algebra.field)


def minimal_generator_count(M: ModulePresentation) -> int:
    return fiber_dim(M, M.algebra.maximal_ideal())


def kernel_over_algebra(
    columns: Sequence[FreeModuleElement], rank: int, algebra: LocalAlgebra
) -> List[FreeModuleElement]:
    """
    Generators of ``{a in A^q : sum(a_j * columns[j]) = 0 in A^rank}``.
    """
    if not columns:
        return []
    ring = algebra.ring
    q = len(columns)
    extended = list(columns) + _unit_multiples(
        list(algebra.defining_ideal), rank, ring
    )
    kernel = []
    for syzygy in syzygy_basis(extended):
        projected = FreeModuleElement(
            ring, (algebra.reduce(c) for c in syzygy.components[:q])
        )
        if not projected.is_zero():
            kernel.append(projected)
    return kernel


def tor1_dim(M: ModulePresentation, I: IdealInA) -> int:
    """
    ``dim_k Tor_1^A(A/I, M)`` as the homology of
    ``F_2 -> F_1 -> F_0`` tensored with ``A/I``.
    """
    if M.rank == 0 or not M.relations:
        return 0
    second = kernel_over_algebra(M.relations, M.rank, M.algebra)
    field = M.algebra.field
    q = M.relation_count
    rank_phi = matrix_rank(_expand(M.relations, I), field)
    rank_psi = matrix_rank(_expand(second, I), field)
    dim = q * I.colength - rank_phi - rank_psi
    logger.debug(
        "tor1: q=%d, colength=%d, rank(phi)=%d, rank(psi)=%d",
        q,
        I.colength,
        rank_phi,
        rank_psi,
    )
    return dim


def presentation_of_ideal(I: IdealInA) -> ModulePresentation:
    """
    `I` as an A-module: one generator per nonzero generator of `I`, related
    by their syzygies over the algebra.
    """
    algebra = I.algebra
    reduced = (algebra.reduce(g) for g in I.generators)
    generators = [g for g in reduced if g]
    ring = algebra.ring
    if not generators:
        return ModulePresentation(algebra, 0, (), name=str(I))
    # Syzygies of (g_1..g_r) are the kernel of A^r -> A.
    row = [FreeModuleElement(ring, (g,)) for g in generators]
    relations = kernel_over_algebra(row, 1, algebra)
    return ModulePresentation(
        algebra, len(generators), relations, name=str(I)
    )


def tensor_presentation(
    N: ModulePresentation, M: ModulePresentation
) -> ModulePresentation:
    """
    A presentation of ``N (x)_A M`` on the generators ``n_a (x) m_b``.
    """
    algebra = M.algebra
    ring = algebra.ring
    r, p = N.rank, M.rank
    zero = ring.zero()
    relations = []
    for column in N.relations:
        for b in range(p):
            entries = [zero] * (r * p)
            for a, value in enumerate(column.components):
                entries[a * p + b] = value
            relations.append(entries)
    for a in range(r):
        for column in M.relations:
            entries = [zero] * (r * p)
            for b, value in enumerate(column.components):
                entries[a * p + b] = value
            relations.append(entries)
    return ModulePresentation(
        algebra, r * p, relations, name=f"{N.name} (x) {M.name}"
    )


def milne_injectivity_witness(
    M: ModulePresentation, I: IdealInA
) -> MilneWitness:
    """
    Measures the kernel of ``I (x) M -> M``; zero means the map is injective.

    Raises `DisagreementError` if the Tor route and the tensor route give
    different kernels.
    """
    zero = M.algebra.zero_ideal()
    tensor = tensor_presentation(presentation_of_ideal(I), M)
    witness = MilneWitness(
        ideal=I,
        tor_dim=tor1_dim(M, I),
        tensor_dim=fiber_dim(tensor, zero),
        image_dim=fiber_dim(M, zero) - fiber_dim(M, I),
    )
    if witness.kernel_dim != witness.tor_dim:
        raise DisagreementError(
            f"kernel of {I} (x) {M.name} -> {M.name} has dimension "
            f"{witness.kernel_dim} but Tor_1 has dimension {witness.tor_dim}",
            verdict=None,
            tor_dim=witness.tor_dim,
        )
    return witness


def reduce_modulo(M: ModulePresentation, I: IdealInA) -> ModulePresentation:
    """
    ``M/IM`` as a module over the quotient algebra ``A/I``.
    """
    quotient = make_algebra(M.algebra.ring, _ideal_polynomials(I))
    return ModulePresentation(
        quotient,
        M.rank,
        (column.components for column in M.relations),
        name=f"{M.name}/I{M.name}",
    )


def quotient_tor1_dim(M: ModulePresentation, I: IdealInA) -> int:
    """
    ``dim_k Tor_1^(A/I)(M/IM, k)``; zero exactly when ``M/IM`` is free over
    ``A/I``.
    """
    reduced = reduce_modulo(M, I)
    return tor1_dim(reduced, reduced.algebra.maximal_ideal())


def maximal_ideal_tensor_dim(M: ModulePresentation, I: IdealInA) -> int:
    """
    ``dim_k(M (x)_A m/I)`` where ``m/I`` is the maximal ideal of ``A/I``.
    """
    reduced = reduce_modulo(M, I)
    quotient = reduced.algebra
    maximal = presentation_of_ideal(quotient.maximal_ideal())
    tensor = tensor_presentation(maximal, reduced)
    return fiber_dim(tensor, quotient.zero_ideal())


def is_free(M: ModulePresentation) -> bool:
    return tor1_dim(M, M.algebra.maximal_ideal()) == 0
