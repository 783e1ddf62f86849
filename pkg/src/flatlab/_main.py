import argparse
import json
import logging
import pathlib
import shlex
import sys
from typing import List, Optional, Tuple

from flatlab import __version__
from flatlab._corpus import generate_corpus
from flatlab._criterion import FLAT_UP_TO_ORDER
from flatlab._exceptions import DisagreementError, InputError, ParseError
from flatlab._export import DIALECTS, export_crosscheck
from flatlab._files import find_problem_files
from flatlab._parsing import parse_mode, parse_problem, parse_window
from flatlab._problems import Problem, build_problem
from flatlab._report import (
    EXIT_DISAGREEMENT,
    EXIT_FLAT,
    EXIT_FLAT_UP_TO_ORDER,
    EXIT_INPUT_ERROR,
    EXIT_NOT_FLAT,
    most_severe,
    render_report,
    run_command,
)


def escape_path(path) -> str:
    """
    A shell-safe rendering of `path` for messages.
    """
    if sys.platform == "win32":
        return str(path)
    return shlex.quote(str(path))


def _mode_argument(text):
    try:
        return parse_mode(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(f"invalid mode {text!r}: {exc}")


def _window_argument(text):
    try:
        return parse_window(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(f"invalid window {text!r}: {exc}")


def _add_json(parser):
    parser.add_argument(
        "--json",
        dest="json_path",
        metavar="OUT",
        help="Writes the JSON report to OUT, or to stdout if OUT is '-'",
    )


def _add_mode(parser):
    parser.add_argument(
        "--mode",
        type=_mode_argument,
        help="Overrides the problem's mode: 'powers-only', 'enum <c_max>' "
        "or 'truncated <N>'",
    )


def _add_window(parser):
    parser.add_argument(
        "--window",
        type=_window_argument,
        metavar="LOW..HIGH",
        help="Degree window for Hilbert functions of graded modules",
    )


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="flatlab",
        description="Decides flatness of modules over local Artinian "
        "algebras",
    )
    parser.add_argument(
        "--version",
        dest="version",
        action="store_true",
        help="Outputs version information and then exit",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        dest="verbose",
        action="store_true",
        help="Logs the steps of each computation to stderr",
    )
    commands = parser.add_subparsers(dest="command", metavar="command")

    analyze = commands.add_parser(
        "analyze", help="Decides flatness for one or more problem files"
    )
    analyze.add_argument(
        "files",
        nargs="*",
        help="Problem files, or directories to search for *.flat files",
    )
    _add_mode(analyze)
    _add_window(analyze)
    _add_json(analyze)

    varpi = commands.add_parser(
        "varpi", help="Tabulates varpi over neighbourhoods of the point"
    )
    varpi.add_argument("file", help="The problem file")
    varpi.add_argument(
        "--n", type=int, help="A single neighbourhood order to evaluate"
    )
    _add_mode(varpi)
    _add_json(varpi)

    tor = commands.add_parser("tor", help="Computes dim Tor_1(A/I, M)")
    tor.add_argument("file", help="The problem file")
    tor.add_argument(
        "--ideal",
        help="Comma separated generators of I, the maximal ideal if absent",
    )
    _add_json(tor)

    hilbert = commands.add_parser(
        "hilbert", help="Tabulates the Hilbert function of a graded module"
    )
    hilbert.add_argument("file", help="The problem file")
    hilbert.add_argument(
        "--n", type=int, required=True, help="The neighbourhood order"
    )
    _add_window(hilbert)
    _add_json(hilbert)

    enum_ideals = commands.add_parser(
        "enum-ideals", help="Lists the monomial ideals of a given colength"
    )
    enum_ideals.add_argument("file", help="The problem file")
    enum_ideals.add_argument("--colength", type=int, required=True)
    _add_json(enum_ideals)

    export = commands.add_parser(
        "export",
        help="Writes a cross-check script for another computer algebra "
        "system",
    )
    export.add_argument("file", help="The problem file")
    export.add_argument("--dialect", choices=DIALECTS, required=True)

    gen_corpus = commands.add_parser(
        "gen-corpus", help="Writes a seeded corpus of random problems"
    )
    gen_corpus.add_argument("--seed", type=int, default=0)
    gen_corpus.add_argument("--count", type=int, default=200)
    gen_corpus.add_argument(
        "--out", type=pathlib.Path, required=True, help="Output directory"
    )

    return parser


def _load(path: pathlib.Path) -> Optional[Tuple[Problem, bytes]]:
    """
    Reads, parses and builds one problem file.  Every failure is reported
    on stderr and gives None.
    """
    try:
        source = path.read_bytes()
    except FileNotFoundError:
        sys.stderr.write(f"ERROR: {escape_path(path)} does not exist\n")
        return None
    except IsADirectoryError:
        sys.stderr.write(f"ERROR: {escape_path(path)} is a directory\n")
        return None
    except PermissionError:
        sys.stderr.write(f"ERROR: {escape_path(path)} is not readable\n")
        return None

    def _on_parse_error(message, *, lineno, col_offset, expected=(), **kw):
        if expected:
            sys.stderr.write(
                f"ERROR: syntax error in {escape_path(path)}: "
                + f"line {lineno}, column {col_offset}, "
                + f"expected one of {', '.join(expected)}\n"
            )
        else:
            sys.stderr.write(
                f"ERROR: {message} in {escape_path(path)}: "
                + f"line {lineno}, column {col_offset}\n"
            )

    parsed = parse_problem(source, on_error=_on_parse_error)
    if parsed is None:
        return None

    try:
        problem = build_problem(parsed)
    except InputError as exc:
        sys.stderr.write(f"ERROR: {escape_path(path)}: {exc}\n")
        return None
    return problem, source


def _report(command, path, args) -> Tuple[int, Optional[dict]]:
    loaded = _load(path)
    if loaded is None:
        return EXIT_INPUT_ERROR, None
    problem, source = loaded

    try:
        report = run_command(
            command,
            problem,
            source=source,
            mode=getattr(args, "mode", None),
            window=getattr(args, "window", None),
            n=getattr(args, "n", None),
            ideal=getattr(args, "ideal", None),
            colength=getattr(args, "colength", None),
        )
    except InputError as exc:
        sys.stderr.write(f"ERROR: {escape_path(path)}: {exc}\n")
        return EXIT_INPUT_ERROR, None
    except DisagreementError as exc:
        sys.stderr.write(
            f"ERROR: oracle disagreement in {escape_path(path)}: {exc}\n"
        )
        return EXIT_DISAGREEMENT, None

    if not report.oracle_agreement:
        sys.stderr.write(
            f"ERROR: cross-check failed for {escape_path(path)}\n"
        )
    elif report.verdict and report.verdict.status == FLAT_UP_TO_ORDER:
        sys.stderr.write(
            f"WARNING: {escape_path(path)} is only checked up to order "
            + f"{report.verdict.order}\n"
        )
    return report.exit_code, report.to_dict()


def _write_output(args, results) -> None:
    documents = [(path, document) for path, document in results if document]
    if args.json_path is not None and documents:
        if len(results) == 1:
            payload = documents[0][1]
        else:
            payload = [
                {"file": str(path), "report": document}
                for path, document in documents
            ]
        text = json.dumps(payload, indent=2) + "\n"
        if args.json_path == "-":
            sys.stdout.write(text)
            return
        pathlib.Path(args.json_path).write_text(text, encoding="utf-8")

    for path, document in documents:
        if len(results) > 1:
            sys.stdout.write(f"{escape_path(path)}:\n")
        sys.stdout.write(render_report(document))


def _fmt_count_were(count):
    if count == 1:
        return f"{count} problem was"
    else:
        return f"{count} problems were"


def _summarize(codes: List[int]) -> None:
    flat = codes.count(EXIT_FLAT)
    not_flat = codes.count(EXIT_NOT_FLAT)
    truncated = codes.count(EXIT_FLAT_UP_TO_ORDER)
    failed = codes.count(EXIT_INPUT_ERROR)
    disagreed = codes.count(EXIT_DISAGREEMENT)

    summary = []
    if flat:
        summary.append(f"{_fmt_count_were(flat)} flat")
    if not_flat:
        summary.append(f"{_fmt_count_were(not_flat)} not flat")
    if truncated:
        summary.append(f"{_fmt_count_were(truncated)} flat up to order")
    if failed:
        summary.append(f"{_fmt_count_were(failed)} not analyzable")
    if disagreed:
        summary.append(f"{_fmt_count_were(disagreed)} inconsistent")
    if not codes:
        summary.append("No problem files are present. Nothing to do.")

    sys.stderr.write(", ".join(summary) + "\n")


def _gen_corpus(args) -> int:
    texts = generate_corpus(args.seed, args.count)
    args.out.mkdir(parents=True, exist_ok=True)
    for index, text in enumerate(texts):
        (args.out / f"instance-{index:04d}.flat").write_text(
            text, encoding="utf-8"
        )
    sys.stderr.write(
        f"Wrote {len(texts)} problems to {escape_path(args.out)}\n"
    )
    return EXIT_FLAT


def _export(args) -> int:
    loaded = _load(pathlib.Path(args.file))
    if loaded is None:
        return EXIT_INPUT_ERROR
    problem, _ = loaded
    try:
        script = export_crosscheck(problem, args.dialect)
    except InputError as exc:
        sys.stderr.write(f"ERROR: {escape_path(args.file)}: {exc}\n")
        return EXIT_INPUT_ERROR
    sys.stdout.write(script)
    return EXIT_FLAT


def main():
    parser = _build_parser()
    args = parser.parse_args()

    if args.version:
        sys.stdout.write(f"flatlab {__version__}\n")
        return

    if args.command is None:
        parser.print_usage(sys.stderr)
        sys.exit(EXIT_INPUT_ERROR)

    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            stream=sys.stderr,
            format="%(name)s: %(message)s",
        )

    if args.command == "gen-corpus":
        sys.exit(_gen_corpus(args))

    if args.command == "export":
        sys.exit(_export(args))

    if args.command == "analyze":
        paths = list(find_problem_files(args.files))
    else:
        paths = [pathlib.Path(args.file)]

    results = []
    codes = []
    for path in paths:
        code, document = _report(args.command, path, args)
        codes.append(code)
        results.append((path, document))

    _write_output(args, results)
    if args.command == "analyze":
        _summarize(codes)

    sys.exit(most_severe(codes))
