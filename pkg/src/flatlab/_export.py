"""
Cross-check scripts for external computer algebra systems.

The scripts recompute the fibre dimensions over the infinitesimal
neighbourhoods of the closed point, ``Tor_1(k, M)`` and, for graded
problems, the Hilbert function rows.  Every printed quantity is followed by
the value flatlab computes for it.
"""

from __future__ import annotations

import re
from typing import Callable, Dict, List, Sequence, Tuple

from flatlab._criterion import Truncated
from flatlab._exceptions import (
    ModeUnsupportedError,
    UnsupportedConstructError,
)
from flatlab._fibers import fiber_dim, tor1_dim
from flatlab._graded import hilbert_table
from flatlab._polynomials import Polynomial, format_polynomial
from flatlab._problems import Problem

DIALECTS = ("m2", "singular")

_M2_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")


def _orders(problem: Problem) -> range:
    algebra = problem.algebra
    if algebra.is_artinian:
        return range(algebra.nil_index)
    mode = problem.mode()
    if isinstance(mode, Truncated):
        return range(mode.n_max + 1)
    raise ModeUnsupportedError(
        "exporting a problem over a ring that is not Artinian needs "
        "'option mode = truncated <N>'",
        mode=str(mode),
    )


def _fiber_rows(problem: Problem) -> List[Tuple[int, int]]:
    M = problem.module
    return [
        (n, fiber_dim(M, problem.algebra.maximal_ideal_power(n + 1)))
        for n in _orders(problem)
    ]


def _graded_rows(problem: Problem) -> List[Tuple[int, int, int]]:
    GM = problem.graded
    rows = []
    for n in _orders(problem):
        table = hilbert_table(GM, n, problem.source.window)
        low, _ = table.window
        rows.extend(
            (n, low + offset, value)
            for offset, value in enumerate(table.values)
        )
    return rows


def _polys(polynomials: Sequence[Polynomial]) -> str:
    return ", ".join(format_polynomial(p) for p in polynomials)


def _m2_check_names(names: Sequence[str]) -> None:
    for name in names:
        if not _M2_NAME_RE.match(name):
            raise UnsupportedConstructError(
                f"variable {name!r} is not a Macaulay2 identifier",
                dialect="m2",
                construct="variable name",
            )


def _m2_field(problem: Problem) -> str:
    field = problem.source.field
    if field.characteristic == 0:
        return "QQ"
    return f"ZZ/{field.characteristic}"


def _m2_matrix(ring: str, relations) -> str:
    rows = ", ".join("{" + _polys(column) + "}" for column in relations)
    return f"transpose matrix({ring}, {{{rows}}})"


def _m2_script(problem: Problem) -> str:
    source = problem.source
    ring = source.ring
    lines = [
        f"-- flatlab cross-check for {ring.name}",
        f"kk = {_m2_field(problem)}",
    ]

    variables = list(ring.variables)
    _m2_check_names(variables)
    graded = source.graded
    if graded is not None:
        _m2_check_names(graded.xvars)
        degrees = ["0"] * len(variables) + ["1"] * len(graded.xvars)
        lines.append(
            f"baseRing = kk[{', '.join(variables + list(graded.xvars))}, "
            f"Degrees => {{{', '.join(degrees)}}}]"
        )
    else:
        lines.append(f"baseRing = kk[{', '.join(variables)}]")

    if ring.generators:
        lines.append(
            f"quotientA = baseRing / ideal({_polys(ring.generators)})"
        )
    else:
        lines.append("quotientA = baseRing")
    maximal = ", ".join(variables) or "0_quotientA"
    lines.append(f"maximalM = ideal({maximal})")

    module = source.module
    if module is not None:
        lines.append("")
        if module.relations:
            matrix = _m2_matrix("quotientA", module.relations)
            lines.append(f"moduleM = coker {matrix}")
        else:
            lines.append(f"moduleM = quotientA^{module.rank}")
        for n, dim in _fiber_rows(problem):
            lines.append(
                "print numgens source basis(moduleM ** "
                f"(quotientA / maximalM^{n + 1})) -- expected {dim}"
            )
        tor = tor1_dim(problem.module, problem.algebra.maximal_ideal())
        lines.append(
            "print numgens source basis Tor_1(coker vars quotientA, "
            f"moduleM) -- expected {tor}"
        )

    if graded is not None:
        lines.append("")
        shifts = ", ".join(str(-d) for d in graded.degrees)
        target = f"quotientA^{{{shifts}}}"
        if graded.relations:
            matrix = _m2_matrix("quotientA", graded.relations)
            lines.append(f"gradedG = coker map({target}, , {matrix})")
        else:
            lines.append(f"gradedG = {target}")
        for n, m, value in _graded_rows(problem):
            lines.append(
                f"print numgens source basis({m}, gradedG ** "
                f"(quotientA / maximalM^{n + 1})) -- expected {value}"
            )

    return "\n".join(lines) + "\n"


def _singular_field(problem: Problem) -> str:
    return str(problem.source.field.characteristic)


def _singular_vector(column: Sequence[Polynomial]) -> str:
    return "[" + _polys(column) + "]"


def _singular_script(problem: Problem) -> str:
    source = problem.source
    if source.graded is not None:
        raise UnsupportedConstructError(
            "Singular cannot grade the module by the x-variables alone",
            dialect="singular",
            construct="graded",
        )
    ring = source.ring
    variables = ", ".join(ring.variables)
    lines = [
        f"// flatlab cross-check for {ring.name}",
        'LIB "homolog.lib";',
        f"ring baseRing = {_singular_field(problem)}, ({variables}), ds;",
        f"ideal definingJ = {_polys(ring.generators) or '0'};",
        "qring quotientA = std(definingJ);",
    ]

    module = source.module
    if module is not None:
        rank = module.rank
        relations = ", ".join(
            _singular_vector(column) for column in module.relations
        )
        lines.append(f"module relationsM = {relations or '0'};")
        for n, dim in _fiber_rows(problem):
            lines.append(
                "vdim(std(relationsM + "
                f"maxideal({n + 1}) * freemodule({rank}))); "
                f"// expected {dim}"
            )
        tor = tor1_dim(problem.module, problem.algebra.maximal_ideal())
        lines.append("module residueK = maxideal(1);")
        lines.append(
            f"vdim(std(Tor(1, residueK, relationsM))); // expected {tor}"
        )

    return "\n".join(lines) + "\n"


_EXPORTERS: Dict[str, Callable[[Problem], str]] = {
    "m2": _m2_script,
    "singular": _singular_script,
}


def export_crosscheck(problem: Problem, dialect: str) -> str:
    """
    Renders a script for `dialect` (``"m2"`` or ``"singular"``) that
    recomputes the numbers flatlab reports for `problem`.
    """
    try:
        exporter = _EXPORTERS[dialect]
    except KeyError:
        raise UnsupportedConstructError(
            f"unknown dialect {dialect!r}",
            dialect=dialect,
            construct="dialect",
        ) from None
    return exporter(problem)
