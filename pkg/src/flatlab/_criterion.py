"""
The infinitesimal flatness criterion for a module over a local algebra.

``varpi(n) = dim(M (x) A/m^(n+1)) / colength(m^(n+1))`` is constant in `n`
exactly when the module is flat.  Over an Artinian algebra only the orders
below the nilpotency index of the maximal ideal need to be examined, so the
criterion is a decision procedure there.  Over other local algebras the
profile can only be checked up to a chosen order.
"""

from __future__ import annotations

import dataclasses
import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from flatlab._artin import (
    IdealInA,
    LocalAlgebra,
    enumerate_monomial_ideals,
    make_algebra,
)
from flatlab._exceptions import (
    BadChainError,
    DisagreementError,
    ModeUnsupportedError,
    NotArtinianError,
)
from flatlab._fibers import (
    ModulePresentation,
    fiber_dim,
    kernel_over_algebra,
    minimal_generator_count,
    tor1_dim,
)
from flatlab._groebner import FreeModuleElement

logger = logging.getLogger(__name__)

FLAT = "flat"
NOT_FLAT = "not-flat"
FLAT_UP_TO_ORDER = "flat-up-to-order"


@dataclasses.dataclass(frozen=True)
class PowersOnly:
    def __str__(self) -> str:
        return "powers-only"


@dataclasses.dataclass(frozen=True)
class Enumeration:
    """
    Powers of the maximal ideal, then every monomial ideal of colength at
    most `c_max`.
    """

    c_max: int = 6

    def __str__(self) -> str:
        return f"enum {self.c_max}"


@dataclasses.dataclass(frozen=True)
class Truncated:
    n_max: int

    def __str__(self) -> str:
        return f"truncated {self.n_max}"


Mode = Union[PowersOnly, Enumeration, Truncated]


@dataclasses.dataclass(frozen=True)
class ProfileRow:
    n: int
    colength: int
    fiber_dim: int
    varpi: Fraction


@dataclasses.dataclass(frozen=True)
class InfinitesimalProfile:
    algebra: LocalAlgebra
    module: ModulePresentation
    rows: Tuple[ProfileRow, ...]

    def varpi(self) -> List[Fraction]:
        return [row.varpi for row in self.rows]


@dataclasses.dataclass(frozen=True)
class Witness:
    """
    Where the criterion fails.  `expected` is the value at the closed point
    and `actual` the value over the larger subscheme, either at neighbourhood
    order `n` or over `ideal`.
    """

    expected: object
    actual: object
    n: Optional[int] = None
    ideal: Optional[IdealInA] = None


@dataclasses.dataclass(frozen=True)
class FlatnessVerdict:
    status: str
    evidence: object = None
    witness: Optional[Witness] = None
    order: Optional[int] = None
    oracle: Optional[int] = None

    @property
    def is_flat(self) -> bool:
        return self.status == FLAT

    def __str__(self) -> str:
        if self.status == FLAT_UP_TO_ORDER:
            return f"flat up to order {self.order}"
        return "flat" if self.is_flat else "not flat"


def varpi_affine(M: ModulePresentation, n: int) -> Fraction:
    neighbourhood = M.algebra.maximal_ideal_power(n + 1)
    return Fraction(fiber_dim(M, neighbourhood), neighbourhood.colength)


def profile_row(M: ModulePresentation, n: int) -> ProfileRow:
    neighbourhood = M.algebra.maximal_ideal_power(n + 1)
    colength = neighbourhood.colength
    dim = fiber_dim(M, neighbourhood)
    row = ProfileRow(n, colength, dim, Fraction(dim, colength))
    logger.debug("profile row %r", row)
    return row


def infinitesimal_profile(
    M: ModulePresentation, orders: Optional[Iterable[int]] = None
) -> InfinitesimalProfile:
    """
    Tabulates `varpi` for ``n = 0 .. nil_index - 1``, or for the given
    orders on algebras that are not Artinian.
    """
    if orders is None:
        if not M.algebra.is_artinian:
            raise NotArtinianError(
                "a full profile needs an Artinian algebra; pass the orders "
                "to examine"
            )
        orders = range(M.algebra.nil_index)
    rows = tuple(profile_row(M, n) for n in orders)
    return InfinitesimalProfile(M.algebra, M, rows)


def _first_failure(profile: InfinitesimalProfile) -> Optional[Witness]:
    expected = profile.rows[0].varpi
    for row in profile.rows[1:]:
        if row.varpi != expected:
            return Witness(expected=expected, actual=row.varpi, n=row.n)
    return None


def _enumeration_failure(
    M: ModulePresentation, c_max: int
) -> Optional[Witness]:
    algebra = M.algebra
    generators = minimal_generator_count(M)
    for c in range(1, min(c_max, algebra.length) + 1):
        for ideal in enumerate_monomial_ideals(algebra, c):
            dim = fiber_dim(M, ideal)
            if dim != c * generators:
                return Witness(
                    expected=Fraction(generators),
                    actual=Fraction(dim, c),
                    ideal=ideal,
                )
    return None


def flat_verdict(
    M: ModulePresentation, mode: Mode = PowersOnly()
) -> FlatnessVerdict:
    if isinstance(mode, Truncated):
        profile = infinitesimal_profile(M, range(mode.n_max + 1))
        witness = _first_failure(profile)
        if witness is not None:
            return FlatnessVerdict(NOT_FLAT, profile, witness)
        return FlatnessVerdict(FLAT_UP_TO_ORDER, profile, order=mode.n_max)

    if not M.algebra.is_artinian:
        raise ModeUnsupportedError(
            f"mode {mode} needs an Artinian algebra; use 'truncated <N>'",
            mode=str(mode),
        )

    profile = infinitesimal_profile(M)
    witness = _first_failure(profile)
    if witness is None and isinstance(mode, Enumeration):
        witness = _enumeration_failure(M, mode.c_max)
    if witness is not None:
        return FlatnessVerdict(NOT_FLAT, profile, witness)
    return FlatnessVerdict(FLAT, profile)


def recheck_witness(M: ModulePresentation, witness: Witness) -> bool:
    """
    Recomputes both sides of a witness.  True if they still differ.
    """
    expected = Fraction(minimal_generator_count(M))
    if witness.ideal is not None:
        actual = Fraction(
            fiber_dim(M, witness.ideal), witness.ideal.colength
        )
    else:
        actual = varpi_affine(M, witness.n)
    return (
        expected == witness.expected
        and actual == witness.actual
        and expected != actual
    )


@dataclasses.dataclass(frozen=True)
class CrossValidation:
    verdict: FlatnessVerdict
    tor_dim: int
    total_dim: int
    length: int
    agreement: bool


def _on_disagreement_raise(message, *, verdict, tor_dim, **kwargs):
    raise DisagreementError(message, verdict=verdict, tor_dim=tor_dim)


def _on_disagreement_ignore(message, **kwargs):
    pass


def _interpret_on_disagreement_action(on_disagreement):
    if on_disagreement == "ignore":
        return _on_disagreement_ignore

    if on_disagreement == "raise":
        return _on_disagreement_raise

    return on_disagreement


def cross_validate(
    M: ModulePresentation,
    mode: Mode = PowersOnly(),
    *,
    on_disagreement="raise",
) -> CrossValidation:
    """
    Runs the criterion and the Tor oracle side by side.  Flatness, the
    vanishing of ``Tor_1(k, M)`` and ``dim M = length(A) * mu(M)`` must
    either all hold or all fail.
    """
    on_disagreement = _interpret_on_disagreement_action(on_disagreement)
    algebra = M.algebra
    if not algebra.is_artinian:
        raise NotArtinianError("cross validation needs an Artinian algebra")

    verdict = flat_verdict(M, mode)
    tor_dim = tor1_dim(M, algebra.maximal_ideal())
    total_dim = fiber_dim(M, algebra.zero_ideal())
    free_by_length = total_dim == algebra.length * minimal_generator_count(M)

    agreement = verdict.is_flat == (tor_dim == 0) == free_by_length
    if not agreement:
        on_disagreement(
            f"criterion says {verdict}, Tor_1(k, M) has dimension {tor_dim} "
            f"and dim M is {total_dim}",
            verdict=verdict,
            tor_dim=tor_dim,
        )
    return CrossValidation(
        verdict=dataclasses.replace(verdict, oracle=tor_dim),
        tor_dim=tor_dim,
        total_dim=total_dim,
        length=algebra.length,
        agreement=agreement,
    )


@dataclasses.dataclass(frozen=True)
class CofiltrationStep:
    colength: int
    fiber_dim: int
    bound: int

    @property
    def subadditive(self) -> bool:
        return self.fiber_dim <= self.bound

    @property
    def exact(self) -> bool:
        return self.fiber_dim == self.bound


@dataclasses.dataclass(frozen=True)
class CofiltrationReport:
    steps: Tuple[CofiltrationStep, ...]
    flat: Optional[bool]

    @property
    def subadditive(self) -> bool:
        return all(step.subadditive for step in self.steps)

    @property
    def exact(self) -> bool:
        return all(step.exact for step in self.steps)

    @property
    def consistent(self) -> bool:
        return self.subadditive and (not self.flat or self.exact)


def _check_chain(chain: Sequence[IdealInA]) -> None:
    colengths = [ideal.colength for ideal in chain]
    if not chain or colengths[-1] != 1:
        raise BadChainError(
            "a chain must end at the maximal ideal",
            position=len(chain) - 1,
            colengths=colengths,
        )
    for position, (smaller, larger) in enumerate(zip(chain, chain[1:])):
        if colengths[position] != colengths[position + 1] + 1:
            raise BadChainError(
                f"colengths {colengths[position]} and "
                f"{colengths[position + 1]} do not differ by one",
                position=position,
                colengths=colengths,
            )
        if not all(larger.contains(g) for g in smaller.generators):
            raise BadChainError(
                f"ideal {position} is not contained in ideal {position + 1}",
                position=position,
                colengths=colengths,
            )


def cofiltration_check(
    M: ModulePresentation, chain: Sequence[IdealInA]
) -> CofiltrationReport:
    """
    Walks a chain of ideals whose colengths drop by one at every step,
    ending at the maximal ideal, and compares each fibre dimension with the
    next one plus the minimal number of generators.
    """
    _check_chain(chain)
    generators = minimal_generator_count(M)
    dims = [fiber_dim(M, ideal) for ideal in chain]
    steps = tuple(
        CofiltrationStep(
            colength=chain[index].colength,
            fiber_dim=dims[index],
            bound=dims[index + 1] + generators,
        )
        for index in range(len(chain) - 1)
    )
    flat = flat_verdict(M).is_flat if M.algebra.is_artinian else None
    return CofiltrationReport(steps, flat)


def _socle_element(algebra: LocalAlgebra, ideal: IdealInA):
    """
    A nonzero element of ``A/I`` killed by the maximal ideal.
    """
    ring = algebra.ring
    quotient = make_algebra(
        ring, [g.components[0] for g in ideal.basis.generators]
    )
    variables = FreeModuleElement(ring, ring.gens())
    for generator in kernel_over_algebra([variables], ring.nvars, quotient):
        element = quotient.reduce(generator.components[0])
        if element:
            return element
    raise AssertionError("an Artinian local ring has a nonzero socle")


def maximal_chain(
    algebra: LocalAlgebra, top: Optional[IdealInA] = None
) -> List[IdealInA]:
    """
    A chain from `top` (the zero ideal by default) up to the maximal ideal
    in which every ideal has colength one less than the one before.
    """
    current = algebra.zero_ideal() if top is None else top
    chain = [current]
    while current.colength > 1:
        element = _socle_element(algebra, current)
        current = IdealInA(algebra, current.generators + (element,))
        chain.append(current)
    return chain


def conjoin_verdicts(verdicts: Sequence[FlatnessVerdict]) -> FlatnessVerdict:
    """
    Combines the verdicts at several points of a base.
    """
    if not verdicts:
        raise ValueError("no verdicts to combine")
    for verdict in verdicts:
        if verdict.status == NOT_FLAT:
            return verdict
    truncated = [v for v in verdicts if v.status == FLAT_UP_TO_ORDER]
    if truncated:
        return min(truncated, key=lambda v: v.order)
    return verdicts[0]
