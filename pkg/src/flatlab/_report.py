"""
Runs a command against a problem and serialises the outcome.

The JSON document produced by `Report.to_json` is the only machine readable
output of the command line tool.  Every rational is written as a ``"p/q"``
string, and apart from ``timing_ms`` the document depends only on the input
and the flags.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import logging
import time
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from flatlab._artin import IdealInA, enumerate_monomial_ideals
from flatlab._criterion import (
    FLAT,
    FLAT_UP_TO_ORDER,
    NOT_FLAT,
    FlatnessVerdict,
    Mode,
    ProfileRow,
    Truncated,
    Witness,
    cofiltration_check,
    conjoin_verdicts,
    cross_validate,
    flat_verdict,
    maximal_chain,
    profile_row,
)
from flatlab._exceptions import DisagreementError, InputError
from flatlab._fibers import (
    brute_force_fiber_dim,
    fiber_dim,
    milne_injectivity_witness,
    tor1_dim,
)
from flatlab._graded import (
    HilbertTable,
    VarpiPolynomial,
    brute_force_graded_piece_dim,
    format_hilbert_polynomial,
    hilbert_table,
    projective_flat_verdict,
    varpi_projective,
)
from flatlab._parsing import parse_polynomials
from flatlab._polynomials import format_polynomial
from flatlab._problems import Problem
from flatlab._scalars import format_scalar

logger = logging.getLogger(__name__)

EXIT_FLAT = 0
EXIT_INPUT_ERROR = 2
EXIT_DISAGREEMENT = 3
EXIT_NOT_FLAT = 10
EXIT_FLAT_UP_TO_ORDER = 11

_EXIT_CODES = {
    FLAT: EXIT_FLAT,
    NOT_FLAT: EXIT_NOT_FLAT,
    FLAT_UP_TO_ORDER: EXIT_FLAT_UP_TO_ORDER,
}

# Most severe first.
_SEVERITY = [
    EXIT_DISAGREEMENT,
    EXIT_INPUT_ERROR,
    EXIT_NOT_FLAT,
    EXIT_FLAT_UP_TO_ORDER,
    EXIT_FLAT,
]

COMMANDS = ("analyze", "varpi", "tor", "hilbert", "enum-ideals")


def most_severe(codes: Iterable[int]) -> int:
    codes = set(codes)
    for code in _SEVERITY:
        if code in codes:
            return code
    return EXIT_FLAT


def input_digest(source: bytes) -> str:
    return hashlib.sha256(source).hexdigest()


@dataclasses.dataclass(frozen=True)
class IdealFiber:
    ideal: IdealInA
    fiber_dim: Optional[int]


@dataclasses.dataclass
class Report:
    command: str
    input_digest: str
    verdict: Optional[FlatnessVerdict] = None
    profile: Tuple[ProfileRow, ...] = ()
    polynomials: Tuple[VarpiPolynomial, ...] = ()
    tables: Tuple[HilbertTable, ...] = ()
    tor: Optional[Tuple[IdealInA, int]] = None
    ideals: Tuple[IdealFiber, ...] = ()
    oracle_agreement: bool = True
    timing_ms: int = 0

    @property
    def exit_code(self) -> int:
        if not self.oracle_agreement:
            return EXIT_DISAGREEMENT
        if self.verdict is None:
            return EXIT_FLAT
        return _EXIT_CODES[self.verdict.status]

    def to_dict(self) -> dict:
        from flatlab import __version__

        document = {
            "version": __version__,
            "input_digest": self.input_digest,
            "command": self.command,
            "verdict": self.verdict.status if self.verdict else None,
        }
        if self.verdict is not None:
            if self.verdict.order is not None:
                document["order"] = self.verdict.order
            if self.verdict.witness is not None:
                document["witness"] = _witness_to_dict(self.verdict.witness)
        document["profile"] = [
            {
                "n": row.n,
                "colength": row.colength,
                "fiber_dim": row.fiber_dim,
                "varpi": format_scalar(row.varpi),
            }
            for row in self.profile
        ]
        if self.polynomials:
            document["polynomials"] = [
                _polynomial_to_dict(p) for p in self.polynomials
            ]
        if self.tables:
            document["hilbert"] = [
                {
                    "n": table.n,
                    "window": list(table.window),
                    "values": list(table.values),
                    "threshold": table.threshold,
                }
                for table in self.tables
            ]
        if self.tor is not None:
            ideal, dim = self.tor
            document["tor"] = {"ideal": str(ideal), "dim": dim}
        if self.ideals:
            document["ideals"] = [
                {
                    "generators": [
                        format_polynomial(g) for g in entry.ideal.generators
                    ],
                    "colength": entry.ideal.colength,
                    "fiber_dim": entry.fiber_dim,
                }
                for entry in self.ideals
            ]
        document["oracle_agreement"] = self.oracle_agreement
        document["timing_ms"] = self.timing_ms
        return document

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _coefficients(coefficients: Sequence[Fraction]) -> List[str]:
    return [format_scalar(c) for c in coefficients]


def _polynomial_to_dict(polynomial: VarpiPolynomial) -> dict:
    return {
        "n": polynomial.n,
        "coeffs": _coefficients(polynomial.coefficients),
        "threshold": polynomial.threshold,
    }


def _witness_to_dict(witness: Witness) -> dict:
    def _value(value):
        if isinstance(value, VarpiPolynomial):
            return _coefficients(value.coefficients)
        return format_scalar(value)

    return {
        "n": witness.n,
        "ideal": str(witness.ideal) if witness.ideal is not None else None,
        "expected": _value(witness.expected),
        "actual": _value(witness.actual),
    }


def _require_module(problem: Problem):
    if problem.module is None:
        raise InputError(
            f"{problem.source.ring.name} has no module declaration"
        )
    return problem.module


def _require_graded(problem: Problem):
    if problem.graded is None:
        raise InputError(
            f"{problem.source.ring.name} has no graded module declaration"
        )
    return problem.graded


def _analyze_affine(problem: Problem, mode: Mode, report: Report):
    M = problem.module
    algebra = problem.algebra
    if algebra.is_artinian and not isinstance(mode, Truncated):
        check = cross_validate(M, mode, on_disagreement="ignore")
        verdict = check.verdict
        agreement = check.agreement
        cofiltration = cofiltration_check(M, maximal_chain(algebra))
        agreement = agreement and cofiltration.consistent
    else:
        verdict = flat_verdict(M, mode)
        tor_dim = tor1_dim(M, algebra.maximal_ideal())
        verdict = dataclasses.replace(verdict, oracle=tor_dim)
        # A failure of the criterion is definitive; Tor must see it too.
        agreement = verdict.status != NOT_FLAT or tor_dim != 0
    report.tor = (algebra.maximal_ideal(), verdict.oracle)
    report.profile = verdict.evidence.rows
    report.oracle_agreement = report.oracle_agreement and agreement
    return verdict


def _graded_oracle(GM, tables: Sequence[HilbertTable]) -> bool:
    for table in tables:
        low, high = table.window
        for m in range(low, high + 1):
            if brute_force_graded_piece_dim(GM, table.n, m) != table.value(m):
                logger.debug(
                    "graded dimension mismatch at n=%d, m=%d", table.n, m
                )
                return False
    return True


def _analyze_graded(problem: Problem, window, report: Report):
    GM = problem.graded
    verdict = projective_flat_verdict(GM, window)
    profile = verdict.evidence
    report.polynomials = profile.polynomials
    report.tables = profile.tables
    report.oracle_agreement = report.oracle_agreement and _graded_oracle(
        GM, profile.tables
    )
    return verdict


def _analyze(problem: Problem, report: Report, *, mode, window) -> None:
    if problem.module is None and problem.graded is None:
        raise InputError(
            f"{problem.source.ring.name} declares nothing to analyze"
        )
    verdicts = []
    if problem.module is not None:
        verdicts.append(
            _analyze_affine(problem, problem.mode(mode), report)
        )
    if problem.graded is not None:
        verdicts.append(_analyze_graded(problem, window, report))
    report.verdict = conjoin_verdicts(verdicts)


def _varpi(problem: Problem, report: Report, *, n, mode) -> None:
    M = _require_module(problem)
    if n is not None:
        orders: Iterable[int] = [n]
    elif problem.algebra.is_artinian:
        orders = range(problem.algebra.nil_index)
    else:
        mode = problem.mode(mode)
        if not isinstance(mode, Truncated):
            raise InputError(
                "ring is not Artinian; pass --n or use a truncated mode"
            )
        orders = range(mode.n_max + 1)

    report.profile = tuple(profile_row(M, order) for order in orders)
    for row in report.profile:
        neighbourhood = problem.algebra.maximal_ideal_power(row.n + 1)
        if brute_force_fiber_dim(M, neighbourhood) != row.fiber_dim:
            report.oracle_agreement = False


def _tor(problem: Problem, report: Report, *, ideal) -> None:
    M = _require_module(problem)
    algebra = problem.algebra
    if ideal is None:
        I = algebra.maximal_ideal()
    else:
        I = algebra.ideal(parse_polynomials(ideal, algebra.ring))
    if algebra.is_artinian:
        try:
            witness = milne_injectivity_witness(M, I)
        except DisagreementError as exc:
            report.oracle_agreement = False
            report.tor = (I, exc.tor_dim)
        else:
            report.tor = (I, witness.tor_dim)
    else:
        report.tor = (I, tor1_dim(M, I))


def _hilbert(problem: Problem, report: Report, *, n, window) -> None:
    GM = _require_graded(problem)
    if n is None:
        raise InputError("hilbert needs a neighbourhood order")
    table = hilbert_table(GM, n, window)
    report.tables = (table,)
    report.polynomials = (varpi_projective(GM, n, table.window),)
    report.oracle_agreement = _graded_oracle(GM, report.tables)


def _enum_ideals(problem: Problem, report: Report, *, colength) -> None:
    if colength is None:
        raise InputError("enum-ideals needs a colength")
    algebra = problem.algebra
    if not algebra.is_artinian:
        raise InputError(
            "monomial ideals are only enumerated over Artinian rings"
        )
    M = problem.module
    entries = []
    for ideal in enumerate_monomial_ideals(algebra, colength):
        if M is None:
            entries.append(IdealFiber(ideal, None))
            continue
        dim = fiber_dim(M, ideal)
        if brute_force_fiber_dim(M, ideal) != dim:
            report.oracle_agreement = False
        entries.append(IdealFiber(ideal, dim))
    report.ideals = tuple(entries)


def run_command(
    command: str,
    problem: Problem,
    *,
    source: bytes = b"",
    mode: Optional[Mode] = None,
    window: Optional[Tuple[int, int]] = None,
    n: Optional[int] = None,
    ideal: Optional[str] = None,
    colength: Optional[int] = None,
) -> Report:
    """
    Dispatches `command` for a built problem.  Flags override the problem
    file's options.
    """
    started = time.perf_counter()
    report = Report(command, input_digest(source))
    window = window or problem.source.window

    if command == "analyze":
        _analyze(problem, report, mode=mode, window=window)
    elif command == "varpi":
        _varpi(problem, report, n=n, mode=mode)
    elif command == "tor":
        _tor(problem, report, ideal=ideal)
    elif command == "hilbert":
        _hilbert(problem, report, n=n, window=window)
    elif command == "enum-ideals":
        _enum_ideals(problem, report, colength=colength)
    else:
        raise ValueError(f"unknown command {command!r}")

    report.timing_ms = int((time.perf_counter() - started) * 1000)
    return report


def _render_verdict(document: dict) -> List[str]:
    verdict = document.get("verdict")
    if verdict is None:
        return []
    if verdict == FLAT_UP_TO_ORDER:
        lines = [f"verdict: flat up to order {document['order']}"]
    else:
        lines = [f"verdict: {verdict.replace('-', ' ')}"]
    witness = document.get("witness")
    if witness is not None:
        where = (
            f"n = {witness['n']}"
            if witness["n"] is not None
            else f"ideal {witness['ideal']}"
        )
        expected, actual = witness["expected"], witness["actual"]
        if isinstance(expected, list):
            expected = _render_coefficients(expected)
            actual = _render_coefficients(actual)
        else:
            expected = _render_scalar(expected)
            actual = _render_scalar(actual)
        lines.append(f"witness: {where}, varpi {expected} vs {actual}")
    return lines


def _render_coefficients(coeffs: Sequence[str]) -> str:
    return format_hilbert_polynomial([Fraction(c) for c in coeffs])


def _render_scalar(text: str) -> str:
    return str(Fraction(text))


_PROFILE_HEADER = f"{'n':>4} {'colength':>9} {'fiber_dim':>10} {'varpi':>8}"


def render_report(document: dict) -> str:
    """
    A plain text rendering of a report document, as produced by
    `Report.to_dict`.
    """
    lines = _render_verdict(document)

    profile = document.get("profile") or []
    if profile:
        lines.append("")
        lines.append(_PROFILE_HEADER)
        for row in profile:
            lines.append(
                f"{row['n']:>4} {row['colength']:>9} {row['fiber_dim']:>10} "
                f"{_render_scalar(row['varpi']):>8}"
            )

    for table in document.get("hilbert", []):
        low, high = table["window"]
        lines.append("")
        lines.append(f"hilbert function at n = {table['n']}:")
        for m, value in zip(range(low, high + 1), table["values"]):
            lines.append(f"  h({m}) = {value}")
        if table["threshold"] is not None:
            lines.append(f"  stable from m = {table['threshold']}")

    for polynomial in document.get("polynomials", []):
        lines.append(
            f"varpi at n = {polynomial['n']}: "
            f"{_render_coefficients(polynomial['coeffs'])}"
        )

    tor = document.get("tor")
    if tor is not None:
        lines.append(f"dim Tor_1(A/{tor['ideal']}, M) = {tor['dim']}")

    for entry in document.get("ideals", []):
        generators = ", ".join(entry["generators"]) or "0"
        line = f"({generators}) colength {entry['colength']}"
        if entry["fiber_dim"] is not None:
            line += f", fiber_dim {entry['fiber_dim']}"
        lines.append(line)

    if not document.get("oracle_agreement", True):
        lines.append("oracle check FAILED")

    return "\n".join(lines).strip("\n") + "\n"
