"""
Flatness of modules over local Artinian algebras, decided by comparing the
fibre dimensions of a module over the infinitesimal neighbourhoods of the
closed point.
"""

from flatlab._artin import (
    ArtinAlgebra,
    IdealInA,
    LocalAlgebra,
    colength,
    enumerate_monomial_ideals,
    infinitesimal_neighborhood,
    make_algebra,
    make_local_algebra,
)
from flatlab._criterion import (
    Enumeration,
    FlatnessVerdict,
    PowersOnly,
    Truncated,
    cofiltration_check,
    conjoin_verdicts,
    cross_validate,
    flat_verdict,
    infinitesimal_profile,
    maximal_chain,
    varpi_affine,
)
from flatlab._exceptions import (
    BadChainError,
    DisagreementError,
    InfiniteDimensionalError,
    InhomogeneousRelationError,
    InputError,
    ModeUnsupportedError,
    NotArtinianError,
    NotLocalAtOriginError,
    ParseError,
    RankMismatchError,
    SemanticError,
    UnitIdealError,
    UnsupportedConstructError,
    VariableMismatchError,
    WindowTooSmallError,
    ZeroPolynomialError,
)
from flatlab._export import export_crosscheck
from flatlab._fibers import (
    ModulePresentation,
    brute_force_fiber_dim,
    fiber_dim,
    milne_injectivity_witness,
    minimal_generator_count,
    quotient_tor1_dim,
    tor1_dim,
)
from flatlab._graded import (
    GradedModule,
    graded_piece_dim,
    hilbert_table,
    projective_flat_verdict,
    varpi_projective,
)
from flatlab._parsing import parse_problem, print_problem
from flatlab._problems import build_problem
from flatlab._report import render_report, run_command
from flatlab._scalars import QQ, PrimeField

# Let linting tools know that we do mean to re-export exception classes.
assert BadChainError is not None
assert DisagreementError is not None
assert InfiniteDimensionalError is not None
assert InhomogeneousRelationError is not None
assert InputError is not None
assert ModeUnsupportedError is not None
assert NotArtinianError is not None
assert NotLocalAtOriginError is not None
assert ParseError is not None
assert RankMismatchError is not None
assert SemanticError is not None
assert UnitIdealError is not None
assert UnsupportedConstructError is not None
assert VariableMismatchError is not None
assert WindowTooSmallError is not None
assert ZeroPolynomialError is not None

try:
    from flatlab._version import VERSION as __version__  # type: ignore
except ImportError:
    __version__ = "0.0.1+dev"

__all__ = [
    "ArtinAlgebra",
    "Enumeration",
    "FlatnessVerdict",
    "GradedModule",
    "IdealInA",
    "LocalAlgebra",
    "ModulePresentation",
    "PowersOnly",
    "PrimeField",
    "QQ",
    "Truncated",
    "brute_force_fiber_dim",
    "build_problem",
    "cofiltration_check",
    "colength",
    "conjoin_verdicts",
    "cross_validate",
    "enumerate_monomial_ideals",
    "export_crosscheck",
    "fiber_dim",
    "flat_verdict",
    "graded_piece_dim",
    "hilbert_table",
    "infinitesimal_neighborhood",
    "infinitesimal_profile",
    "make_algebra",
    "make_local_algebra",
    "maximal_chain",
    "milne_injectivity_witness",
    "minimal_generator_count",
    "parse_problem",
    "print_problem",
    "projective_flat_verdict",
    "quotient_tor1_dim",
    "render_report",
    "run_command",
    "tor1_dim",
    "varpi_affine",
    "varpi_projective",
]
