"""
Parser and printer for ``.flat`` problem files.

A problem file declares a coefficient field, one local algebra, and
optionally an affine module and a graded module over it::

    field Q
    ring A = k[y] / (y^2)
    module M over A generators 1 relations [[y]]
    option mode = powers-only

Parsing checks the declarations against each other (variables, ranks,
homogeneity) but never computes a Groebner basis; turning a `ProblemFile`
into algebra objects is the job of `flatlab._problems`.
"""

from __future__ import annotations

import dataclasses
import re
from typing import List, Optional, Sequence, Tuple, Union

import lark
from lark import Token, Tree

from flatlab._criterion import Enumeration, Mode, PowersOnly, Truncated
from flatlab._exceptions import ParseError, SemanticError
from flatlab._graded import graded_ring
from flatlab._polynomials import (
    Polynomial,
    PolynomialRing,
    format_polynomial,
)
from flatlab._scalars import QQ, Field, PrimeField

# Bounds the work a single polynomial expression can ask for.
MAX_DEGREE = 256
MAX_DIGITS = 1000

# Words of the grammar that cannot name a variable.
_KEYWORDS = frozenset(
    (
        "Fp",
        "Q",
        "degrees",
        "enum",
        "field",
        "generators",
        "graded",
        "k",
        "mode",
        "module",
        "option",
        "over",
        "relations",
        "ring",
        "truncated",
        "window",
        "xvars",
    )
)

_GRAMMAR = r"""
start: declaration*

?declaration: field_decl
            | ring_decl
            | module_decl
            | graded_decl
            | option_decl

field_decl: "field" "Q"        -> field_q
          | "field" "Fp" INT   -> field_fp

ring_decl: "ring" NAME "=" "k" "[" names? "]" ("/" "(" polys? ")")?

module_decl: "module" NAME "over" NAME "generators" INT "relations" matrix

graded_decl: "graded" NAME "over" NAME "xvars" "[" names? "]" \
             "degrees" "[" integers? "]" "relations" matrix

option_decl: "option" "mode" "=" mode      -> option_mode
           | "option" "window" "=" window  -> option_window

mode: "powers-only"    -> powers_only
    | "enum" INT       -> enum
    | "truncated" INT  -> truncated
window: SIGNED_INT ".." SIGNED_INT

matrix: "[" (column ("," column)*)? "]"
column: "[" polys? "]"

names: NAME ("," NAME)*
polys: sum ("," sum)*
integers: SIGNED_INT ("," SIGNED_INT)*

polynomial: sum
polynomials: polys?

?sum: product
    | sum "+" product  -> add
    | sum "-" product  -> sub
?product: unary
    | product "*" unary  -> mul
    | product "/" unary  -> div
?unary: power
    | "-" unary  -> neg
    | "+" unary
?power: atom
    | atom "^" INT  -> pow
?atom: NAME  -> var
    | INT  -> number
    | "(" sum ")"

NAME: /[A-Za-z_][A-Za-z0-9_]*/
COMMENT: /#[^\n]*/

%import common.INT
%import common.SIGNED_INT
%import common.WS
%ignore WS
%ignore COMMENT
"""

_parser = lark.Lark(
    _GRAMMAR,
    parser="lalr",
    start=["start", "polynomial", "polynomials", "mode", "window"],
    propagate_positions=True,
)


@dataclasses.dataclass(frozen=True)
class RingDeclaration:
    name: str
    variables: Tuple[str, ...]
    generators: Tuple[Polynomial, ...] = ()


@dataclasses.dataclass(frozen=True)
class ModuleDeclaration:
    name: str
    ring: str
    rank: int
    relations: Tuple[Tuple[Polynomial, ...], ...] = ()


@dataclasses.dataclass(frozen=True)
class GradedDeclaration:
    """
    Relation entries live in ``k[y, x]``, the ring variables followed by
    `xvars`, under the block order in which the x-variables dominate.
    """

    name: str
    ring: str
    xvars: Tuple[str, ...]
    degrees: Tuple[int, ...]
    relations: Tuple[Tuple[Polynomial, ...], ...] = ()

    @property
    def rank(self) -> int:
        return len(self.degrees)


@dataclasses.dataclass(frozen=True)
class ProblemFile:
    field: Field
    ring: RingDeclaration
    module: Optional[ModuleDeclaration] = None
    graded: Optional[GradedDeclaration] = None
    mode: Optional[Mode] = None
    window: Optional[Tuple[int, int]] = None


def affine_ring(field: Field, variables: Sequence[str]) -> PolynomialRing:
    return PolynomialRing(field, tuple(variables))


class _Invalid(Exception):
    def __init__(self, message, node):
        super().__init__(message)
        self.message = message
        self.node = node


def _position(node) -> Tuple[int, int]:
    if isinstance(node, Token):
        return node.line or 1, node.column or 1
    meta = getattr(node, "meta", None)
    return getattr(meta, "line", 1), getattr(meta, "column", 1)


def _children(node, data: str) -> List:
    for child in node.children:
        if isinstance(child, Tree) and child.data == data:
            return list(child.children)
    return []


def _integer(token) -> int:
    digits = str(token).lstrip("+-")
    if len(digits) > MAX_DIGITS:
        raise _Invalid(
            f"integer literal has more than {MAX_DIGITS} digits", token
        )
    return int(token)


def _evaluate(node, ring: PolynomialRing) -> Polynomial:
    kind = node.data
    if kind == "var":
        (name,) = node.children
        if name not in ring.variables:
            raise _Invalid(f"unknown variable {str(name)!r}", name)
        return ring.gen(str(name))
    if kind == "number":
        (digits,) = node.children
        return ring.constant(_integer(digits))
    if kind == "neg":
        return -_evaluate(node.children[0], ring)
    if kind == "pow":
        base_node, exponent = node.children
        base = _evaluate(base_node, ring)
        exponent = _integer(exponent)
        if exponent > MAX_DEGREE or base.degree() * exponent > MAX_DEGREE:
            raise _Invalid(
                f"degree exceeds the limit of {MAX_DEGREE}", node
            )
        return base**exponent

    left = _evaluate(node.children[0], ring)
    right = _evaluate(node.children[1], ring)
    if kind == "add":
        return left + right
    if kind == "sub":
        return left - right
    if kind == "mul":
        if left.degree() + right.degree() > MAX_DEGREE:
            raise _Invalid(
                f"degree exceeds the limit of {MAX_DEGREE}", node
            )
        return left * right
    if kind == "div":
        if not right.is_constant():
            raise _Invalid("can only divide by a constant", node.children[1])
        if right.is_zero():
            raise _Invalid("division by zero", node.children[1])
        return left.scale(ring.field.inv(right.constant_term()))
    raise AssertionError(f"unexpected node {kind!r}")


def _on_error_raise(message, *, lineno, col_offset, expected=(), **kwargs):
    if expected:
        raise ParseError(
            message, lineno=lineno, col_offset=col_offset, expected=expected
        )
    raise SemanticError(message, lineno=lineno, col_offset=col_offset)


def _interpret_on_error_action(on_error):
    if on_error == "raise":
        return _on_error_raise

    return on_error


class _ProblemBuilder:
    def __init__(self, on_error) -> None:
        self.on_error = on_error
        self.failed = False
        self.field: Optional[Field] = None
        self.ring: Optional[RingDeclaration] = None
        self.module: Optional[ModuleDeclaration] = None
        self.graded: Optional[GradedDeclaration] = None
        self.mode: Optional[Mode] = None
        self.window: Optional[Tuple[int, int]] = None

    def error(self, message, node) -> None:
        self.failed = True
        lineno, col_offset = _position(node)
        self.on_error(message, lineno=lineno, col_offset=col_offset)

    def build(self, tree: Tree, last_line: int) -> Optional[ProblemFile]:
        for declaration in tree.children:
            handler = getattr(self, f"_{declaration.data}")
            try:
                handler(declaration)
            except _Invalid as exc:
                self.error(exc.message, exc.node)

        if self.ring is None and not self.failed:
            self.failed = True
            self.on_error(
                "no ring declared", lineno=last_line, col_offset=1
            )
        if self.failed:
            return None
        return ProblemFile(
            field=self.field or QQ,
            ring=self.ring,
            module=self.module,
            graded=self.graded,
            mode=self.mode,
            window=self.window,
        )

    def _check_unset(self, attribute, what, node) -> None:
        if getattr(self, attribute) is not None:
            raise _Invalid(f"{what} is declared twice", node)

    def _field_q(self, node) -> None:
        self._check_unset("field", "field", node)
        if self.ring is not None:
            raise _Invalid("field must be declared before the ring", node)
        self.field = QQ

    def _field_fp(self, node) -> None:
        self._check_unset("field", "field", node)
        if self.ring is not None:
            raise _Invalid("field must be declared before the ring", node)
        (digits,) = node.children
        try:
            self.field = PrimeField(_integer(digits))
        except ValueError as exc:
            raise _Invalid(str(exc), digits) from None

    def _ring_decl(self, node) -> None:
        self._check_unset("ring", "ring", node)
        name = node.children[0]
        variables = [str(token) for token in _children(node, "names")]
        _check_distinct(variables, node)
        ring = affine_ring(self.field or QQ, variables)

        generators = []
        for child in _children(node, "polys"):
            generator = _evaluate(child, ring)
            if generator.constant_term() != 0:
                raise _Invalid(
                    f"generator {generator} does not vanish at the origin",
                    child,
                )
            generators.append(generator)
        self.ring = RingDeclaration(
            str(name), tuple(variables), tuple(generators)
        )

    def _over(self, node) -> RingDeclaration:
        ring_name = node.children[1]
        if self.ring is None or self.ring.name != ring_name:
            raise _Invalid(f"undeclared ring {str(ring_name)!r}", ring_name)
        return self.ring

    def _matrix(self, node, ring, rank) -> List[Tuple[Polynomial, ...]]:
        columns = []
        for column in _children(node, "matrix"):
            entries = [
                _evaluate(entry, ring) for entry in _children(column, "polys")
            ]
            if len(entries) != rank:
                raise _Invalid(
                    f"relation has {len(entries)} entries for {rank} "
                    "generators",
                    column,
                )
            columns.append(tuple(entries))
        return columns

    def _module_decl(self, node) -> None:
        self._check_unset("module", "module", node)
        declaration = self._over(node)
        name, _, rank = node.children[:3]
        ring = affine_ring(self.field or QQ, declaration.variables)
        relations = self._matrix(node, ring, _integer(rank))
        self.module = ModuleDeclaration(
            str(name), declaration.name, _integer(rank), tuple(relations)
        )

    def _graded_decl(self, node) -> None:
        self._check_unset("graded", "graded module", node)
        declaration = self._over(node)
        name = node.children[0]
        xvars = [str(token) for token in _children(node, "names")]
        _check_distinct(list(declaration.variables) + xvars, node)
        degrees = [_integer(token) for token in _children(node, "integers")]

        ring = graded_ring(self.field or QQ, declaration.variables, xvars)
        relations = self._matrix(node, ring, len(degrees))
        x_indices = range(len(declaration.variables), ring.nvars)
        for column_node, column in zip(_children(node, "matrix"), relations):
            shifts = set()
            for degree, entry in zip(degrees, column):
                shifts.update(
                    degree + d for d in entry.partial_degrees(x_indices)
                )
            if len(shifts) > 1:
                raise _Invalid(
                    "relation is not homogeneous in "
                    + ", ".join(xvars),
                    column_node,
                )

        self.graded = GradedDeclaration(
            str(name),
            declaration.name,
            tuple(xvars),
            tuple(degrees),
            tuple(relations),
        )

    def _option_mode(self, node) -> None:
        self._check_unset("mode", "option mode", node)
        self.mode = _mode(node.children[0])

    def _option_window(self, node) -> None:
        self._check_unset("window", "option window", node)
        self.window = _window(node.children[0])


def _mode(node) -> Mode:
    if node.data == "powers_only":
        return PowersOnly()
    (bound,) = node.children
    if node.data == "enum":
        if _integer(bound) < 1:
            raise _Invalid("enumeration bound must be positive", bound)
        return Enumeration(_integer(bound))
    return Truncated(_integer(bound))


def _window(node) -> Tuple[int, int]:
    low, high = (_integer(token) for token in node.children)
    if low > high:
        raise _Invalid(f"empty window {low}..{high}", node)
    return low, high


def _check_distinct(names: Sequence[str], node) -> None:
    seen = set()
    for name in names:
        if name in _KEYWORDS:
            raise _Invalid(f"{name!r} is a keyword, not a variable", node)
        if name in seen:
            raise _Invalid(f"variable {name!r} is declared twice", node)
        seen.add(name)


def _parse_tree(text: str, start: str) -> Tree:
    try:
        return _parser.parse(text, start=start)
    except lark.exceptions.UnexpectedInput as exc:
        expected = getattr(exc, "expected", None) or getattr(
            exc, "allowed", None
        )
        lineno = exc.line if exc.line and exc.line > 0 else None
        if lineno is None:
            lineno = text.count("\n") + 1
        col_offset = exc.column if exc.column and exc.column > 0 else 1
        raise ParseError(
            f"unexpected input at line {lineno}, column {col_offset}",
            lineno=lineno,
            col_offset=col_offset,
            expected=sorted(expected or ("<end of input>",)),
        ) from None


def _nesting_error() -> ParseError:
    return ParseError(
        "expression is nested too deeply",
        lineno=1,
        col_offset=1,
        expected=("<shallower expression>",),
    )


_NEWLINE_RE = re.compile(r"\r\n?")


def _decode(text: Union[str, bytes]) -> str:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(
                f"input is not valid UTF-8: {exc.reason}",
                lineno=text[: exc.start].count(b"\n") + 1,
                col_offset=1,
                expected=("<utf-8 text>",),
            ) from None
    return _NEWLINE_RE.sub("\n", text)


def parse_problem(
    text: Union[str, bytes], *, on_error="raise"
) -> Optional[ProblemFile]:
    """
    Parses a problem file.

    :param on_error:
        Called as ``on_error(message, *, lineno, col_offset, expected=())``
        for every diagnostic.  The default, ``"raise"``, raises `ParseError`
        for syntax errors and `SemanticError` for everything else.  If a
        callable returns normally the problem is not built and None is
        returned.
    """
    on_error = _interpret_on_error_action(on_error)
    try:
        text = _decode(text)
        tree = _parse_tree(text, "start")
    except ParseError as exc:
        error = exc
    except RecursionError:
        error = _nesting_error()
    else:
        try:
            return _ProblemBuilder(on_error).build(
                tree, text.count("\n") + 1
            )
        except RecursionError:
            error = _nesting_error()
    on_error(
        str(error),
        lineno=error.lineno,
        col_offset=error.col_offset,
        expected=error.expected,
    )
    return None


def parse_polynomials(text: str, ring: PolynomialRing) -> List[Polynomial]:
    """
    Parses a comma separated list of polynomials in the variables of `ring`.
    """
    tree = _parse_tree(text, "polynomials")
    try:
        return [_evaluate(child, ring) for child in _children(tree, "polys")]
    except _Invalid as exc:
        lineno, col_offset = _position(exc.node)
        raise SemanticError(
            exc.message, lineno=lineno, col_offset=col_offset
        ) from None
    except RecursionError:
        raise _nesting_error() from None


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    tree = _parse_tree(text, "polynomial")
    try:
        return _evaluate(tree.children[0], ring)
    except _Invalid as exc:
        lineno, col_offset = _position(exc.node)
        raise SemanticError(
            exc.message, lineno=lineno, col_offset=col_offset
        ) from None
    except RecursionError:
        raise _nesting_error() from None


def _format_list(values) -> str:
    return ", ".join(str(value) for value in values)


def _format_matrix(relations) -> str:
    columns = (
        "[" + _format_list(format_polynomial(e) for e in column) + "]"
        for column in relations
    )
    return "[" + ", ".join(columns) + "]"


def print_problem(problem: ProblemFile) -> str:
    """
    Renders a problem in canonical form.  Parsing the result gives back an
    equal `ProblemFile`.
    """
    lines = [f"field {problem.field}"]

    ring = problem.ring
    line = f"ring {ring.name} = k[{_format_list(ring.variables)}]"
    if ring.generators:
        line += (
            " / ("
            + _format_list(format_polynomial(g) for g in ring.generators)
            + ")"
        )
    lines.append(line)

    module = problem.module
    if module is not None:
        lines.append(
            f"module {module.name} over {module.ring} "
            f"generators {module.rank} "
            f"relations {_format_matrix(module.relations)}"
        )

    graded = problem.graded
    if graded is not None:
        lines.append(
            f"graded {graded.name} over {graded.ring} "
            f"xvars [{_format_list(graded.xvars)}] "
            f"degrees [{_format_list(graded.degrees)}] "
            f"relations {_format_matrix(graded.relations)}"
        )

    if problem.mode is not None:
        lines.append(f"option mode = {problem.mode}")
    if problem.window is not None:
        low, high = problem.window
        lines.append(f"option window = {low}..{high}")

    return "\n".join(lines) + "\n"


def _parse_option(text: str, start: str, convert):
    tree = _parse_tree(text.strip(), start)
    try:
        return convert(tree)
    except _Invalid as exc:
        lineno, col_offset = _position(exc.node)
        raise SemanticError(
            exc.message, lineno=lineno, col_offset=col_offset
        ) from None
    except RecursionError:
        raise _nesting_error() from None


def parse_mode(text: str) -> Mode:
    """
    Parses the right hand side of ``option mode``, e.g. ``"enum 4"``.
    """
    return _parse_option(text, "mode", _mode)


def parse_window(text: str) -> Tuple[int, int]:
    """
    Parses a degree window written ``low..high``.
    """
    return _parse_option(text, "window", _window)
