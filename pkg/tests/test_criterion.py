from fractions import Fraction

import pytest

from flatlab import (
    BadChainError,
    Enumeration,
    ModulePresentation,
    ModeUnsupportedError,
    NotArtinianError,
    PowersOnly,
    Truncated,
    build_problem,
    cofiltration_check,
    conjoin_verdicts,
    cross_validate,
    flat_verdict,
    infinitesimal_profile,
    make_algebra,
    make_local_algebra,
    maximal_chain,
    parse_problem,
    varpi_affine,
)
from flatlab._corpus import FIXTURE_ALGEBRAS, fixture_algebra, generate_corpus
from flatlab._criterion import (
    FLAT,
    FLAT_UP_TO_ORDER,
    NOT_FLAT,
    FlatnessVerdict,
    recheck_witness,
)
from flatlab._fibers import cyclic_module, free_module, tor1_dim


@pytest.fixture
def residue_field():
    return cyclic_module(make_algebra(["y"], ["y^2"]), ["y"])


@pytest.fixture
def cyclic_quotient():
    return cyclic_module(make_algebra(["y"], ["y^3"]), ["y^2"])


def _rows(profile):
    return [
        (row.n, row.colength, row.fiber_dim, row.varpi)
        for row in profile.rows
    ]


def test_profile_of_residue_field(residue_field):
    profile = infinitesimal_profile(residue_field)

    assert _rows(profile) == [(0, 1, 1, 1), (1, 2, 1, Fraction(1, 2))]


def test_residue_field_is_not_flat(residue_field):
    verdict = flat_verdict(residue_field)

    assert verdict.status == NOT_FLAT
    assert verdict.witness.n == 1
    assert verdict.witness.expected == 1
    assert verdict.witness.actual == Fraction(1, 2)
    assert recheck_witness(residue_field, verdict.witness)


def test_cyclic_quotient_fails_late(cyclic_quotient):
    verdict = flat_verdict(cyclic_quotient)

    assert verdict.evidence.varpi() == [1, 1, Fraction(2, 3)]
    assert verdict.witness.n == 2
    assert varpi_affine(cyclic_quotient, 2) == Fraction(2, 3)


@pytest.mark.parametrize("index", range(len(FIXTURE_ALGEBRAS)))
@pytest.mark.parametrize("rank", [1, 2, 5])
def test_free_modules_are_flat(index, rank):
    M = free_module(fixture_algebra(index), rank)

    verdict = flat_verdict(M)

    assert verdict.status == FLAT
    assert verdict.evidence.varpi() == [rank] * M.algebra.nil_index


def test_enumeration_mode_reports_failures():
    algebra = make_algebra(["y", "z"], ["y^2", "y*z", "z^2"])
    M = cyclic_module(algebra, ["y"])

    verdict = flat_verdict(M, Enumeration(3))

    assert verdict.status == NOT_FLAT
    assert recheck_witness(M, verdict.witness)


def test_enumeration_confirms_free_modules():
    M = free_module(fixture_algebra(8), 2)

    assert flat_verdict(M, Enumeration()).status == FLAT


@pytest.fixture(scope="module")
def corpus():
    return [
        build_problem(parse_problem(text)).module
        for text in generate_corpus(0, 200)
    ]


def test_criterion_agrees_with_tor(corpus):
    flat = 0
    for M in corpus:
        check = cross_validate(M)

        assert check.agreement
        assert check.verdict.is_flat == (check.tor_dim == 0)
        flat += check.verdict.is_flat
    assert 0 < flat < len(corpus)


def test_flat_modules_pass_every_monomial_ideal(corpus):
    flat = [M for M in corpus if flat_verdict(M, PowersOnly()).is_flat]
    assert flat
    for M in flat:
        assert flat_verdict(M, Enumeration(6)).is_flat


def test_truncated_mode_on_node():
    node = make_local_algebra(["y", "z"], ["y*z"])

    free = flat_verdict(free_module(node, 1), Truncated(3))
    branch = flat_verdict(cyclic_module(node, ["y"]), Truncated(3))

    assert free.status == FLAT_UP_TO_ORDER
    assert free.order == 3
    assert str(free) == "flat up to order 3"
    assert branch.status == NOT_FLAT
    assert branch.witness.n == 1


def test_powers_need_an_artinian_ring():
    node = make_local_algebra(["y", "z"], ["y*z"])

    with pytest.raises(ModeUnsupportedError) as exc_info:
        flat_verdict(free_module(node, 1))
    assert exc_info.value.mode == "powers-only"
    with pytest.raises(NotArtinianError):
        infinitesimal_profile(free_module(node, 1))
    with pytest.raises(NotArtinianError):
        cross_validate(free_module(node, 1))


def test_maximal_chain():
    algebra = fixture_algebra(15)

    chain = maximal_chain(algebra)

    assert [ideal.colength for ideal in chain] == list(
        range(algebra.length, 0, -1)
    )
    assert chain[-1] == algebra.maximal_ideal()


def test_cofiltration_is_subadditive(corpus):
    for M in corpus:
        report = cofiltration_check(M, maximal_chain(M.algebra))

        assert report.subadditive
        assert report.consistent


def test_cofiltration_is_exact_for_free_modules():
    algebra = fixture_algebra(11)
    chain = maximal_chain(algebra)

    report = cofiltration_check(free_module(algebra, 2), chain)

    assert report.flat
    assert report.exact


def test_cofiltration_of_residue_field(residue_field):
    chain = maximal_chain(residue_field.algebra)

    report = cofiltration_check(residue_field, chain)

    assert report.flat is False
    assert [step.fiber_dim for step in report.steps] == [1]
    assert not report.exact


def test_bad_chain():
    algebra = make_algebra(["y"], ["y^4"])
    y = algebra.ring.gen("y")
    chain = [algebra.zero_ideal(), algebra.ideal([y**2]), algebra.ideal([y])]

    with pytest.raises(BadChainError) as exc_info:
        cofiltration_check(free_module(algebra, 1), chain)
    assert exc_info.value.position == 0
    assert exc_info.value.colengths == [4, 2, 1]


def test_chain_must_end_at_maximal_ideal():
    algebra = make_algebra(["y"], ["y^4"])
    y = algebra.ring.gen("y")

    with pytest.raises(BadChainError):
        cofiltration_check(
            free_module(algebra, 1),
            [algebra.zero_ideal(), algebra.ideal([y**3])],
        )


def test_conjoin_verdicts():
    flat = FlatnessVerdict(FLAT)
    short = FlatnessVerdict(FLAT_UP_TO_ORDER, order=2)
    long = FlatnessVerdict(FLAT_UP_TO_ORDER, order=5)
    failed = FlatnessVerdict(NOT_FLAT)

    assert conjoin_verdicts([flat, flat]) is flat
    assert conjoin_verdicts([flat, long, short]) is short
    assert conjoin_verdicts([short, failed]) is failed
    with pytest.raises(ValueError):
        conjoin_verdicts([])


def test_tor_of_disguised_free_module_vanishes():
    algebra = fixture_algebra(17)
    M = ModulePresentation(algebra, 2, [["1 + y", "z"]])
    y, z, w = algebra.ring.gens()

    for generators in ([y], [y * z], [y + w, z]):
        assert tor1_dim(M, algebra.ideal(generators)) == 0
