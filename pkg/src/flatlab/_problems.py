from __future__ import annotations

import dataclasses
from typing import Optional

from flatlab._artin import LocalAlgebra, make_local_algebra
from flatlab._criterion import Mode, PowersOnly
from flatlab._fibers import ModulePresentation
from flatlab._graded import GradedModule
from flatlab._parsing import ProblemFile, affine_ring


@dataclasses.dataclass(frozen=True)
class Problem:
    source: ProblemFile
    algebra: LocalAlgebra
    module: Optional[ModulePresentation] = None
    graded: Optional[GradedModule] = None

    def mode(self, override: Optional[Mode] = None) -> Mode:
        """
        The criterion mode to run: `override`, then the file's option, then
        powers of the maximal ideal.
        """
        return override or self.source.mode or PowersOnly()


def build_problem(problem: ProblemFile) -> Problem:
    """
    Builds the algebra and modules a parsed problem declares.  This is where
    Groebner bases are first computed, so locality and finiteness errors
    surface here.
    """
    declaration = problem.ring
    algebra = make_local_algebra(
        affine_ring(problem.field, declaration.variables),
        declaration.generators,
        field=problem.field,
    )

    module = None
    if problem.module is not None:
        module = ModulePresentation(
            algebra,
            problem.module.rank,
            problem.module.relations,
            name=problem.module.name,
        )

    graded = None
    if problem.graded is not None:
        graded = GradedModule(
            algebra,
            problem.graded.xvars,
            problem.graded.degrees,
            problem.graded.relations,
            name=problem.graded.name,
        )

    return Problem(problem, algebra, module, graded)
