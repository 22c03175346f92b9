"""
Parser for the `.caa` protocol format.

    machine #0 {
        initial s0;
        final s0;
        s0 -- ?{get, P} -> s1;
        s0 -- ?{put, S} -> s0;
        s1 -- P!S -> s0;
    }

Receive transitions leaving one state are tried in the order written.
`%` starts a line comment.
"""
import dataclasses
import logging
import re
from dataclasses import dataclass, field
from typing import Optional

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken, VisitError

from app.constants.common import INT_MAX, INT_MIN
from app.constants.error_codes import ErrorCode
from app.core.exceptions import ProtocolSyntaxError
from app.modules.automaton.models import Caa, Receive, Send, Span, Transition
from app.modules.dsl.models import ParseError, ProtocolDoc, SourceMap
from app.modules.semantics.models import Machine, Protocol
from app.modules.semantics.service import validate_protocol
from app.modules.terms.models import ArithOp, Atom, BinOp, Int, Pid, Tuple, Var
from app.modules.terms.service import has_arithmetic

logger = logging.getLogger(__name__)

GRAMMAR = r"""
    start: machine+

    machine: "machine" PID "{" initial final_decl? states_decl? transition* "}"
    initial: "initial" NAME ";"
    final_decl: "final" NAME+ ";"
    states_decl: "states" NAME+ ";"
    transition: NAME "--" label "->" NAME ";"

    label: "?" term             -> receive
         | target "!" term      -> send
    ?target: VAR                -> var
           | PID                -> pid

    ?term: sum
    ?sum: product
        | sum "+" product       -> add
        | sum "-" product       -> sub
    ?product: primary
            | product "*" primary -> mul
    ?primary: ATOM              -> atom
            | VAR               -> var
            | PID               -> pid
            | INT               -> integer
            | "-" INT           -> negative_integer
            | "{" "}"           -> empty_tuple
            | "{" term ("," term)* "}" -> tuple_term
            | "(" term ")"

    PID: /#[0-9]+/
    INT: /[0-9]+/
    ATOM: /[a-z][a-zA-Z0-9_]*/
    VAR: /[A-Z][a-zA-Z0-9_]*/
    NAME: /[a-zA-Z_][a-zA-Z0-9_]*/
    COMMENT: /%[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

parser = Lark(GRAMMAR, parser="lalr", propagate_positions=True, maybe_placeholders=False)

_DISPLAY = {
    t.name: (t.pattern.value if t.pattern.type == "str" else t.name.lower())
    for t in parser.terminals
}
_DISPLAY["$END"] = "end of input"

RESERVED_WORDS = frozenset({"machine", "initial", "final", "states"})

# a keyword written where a transition source belongs
_RESERVED_SOURCE = re.compile(r"(?<![\w#])(machine|initial|final|states)\s*--")


def _reserved(name: str) -> str:
    return f"`{name}` is a reserved word and cannot name a state"


def _span_of(item) -> Span:
    """Span of a lark Token or Meta."""
    line = getattr(item, "line", None) or 1
    column = getattr(item, "column", None) or 1
    end_line = getattr(item, "end_line", None) or line
    end_column = getattr(item, "end_column", None) or column + 1
    return Span(line, column, end_line, end_column)


@dataclass
class _EdgeSpec:
    source: str
    label: object
    target: str
    span: Span
    source_span: Span


@dataclass
class _MachineSpec:
    pid: Pid
    span: Span
    initial: tuple[str, Span]
    finals: list[tuple[str, Span]] = field(default_factory=list)
    declared: list[tuple[str, Span]] = field(default_factory=list)
    edges: list[_EdgeSpec] = field(default_factory=list)


class _ProtocolBuilder(Transformer):
    """Turns the parse tree into terms, labels and machine specs, collecting semantic errors."""

    def __init__(self):
        super().__init__()
        self.errors: list[ParseError] = []

    def _error(self, code: str, message: str, span: Span) -> None:
        self.errors.append(ParseError(code, message, span))

    # terms
    def atom(self, children):
        return Atom(str(children[0]))

    def var(self, children):
        return Var(str(children[0]))

    def pid(self, children):
        return Pid(int(children[0][1:]))

    def integer(self, children):
        return self._bounded(int(children[0]), children[0])

    def negative_integer(self, children):
        return self._bounded(-int(children[0]), children[0])

    def _bounded(self, value: int, token: Token) -> Int:
        if not INT_MIN <= value <= INT_MAX:
            message = f"integer {value} does not fit in 64 bits"
            self._error(ErrorCode.INT_OUT_OF_RANGE, message, _span_of(token))
            return Int(0)
        return Int(value)

    def empty_tuple(self, children):
        return Tuple(())

    def tuple_term(self, children):
        return Tuple(tuple(children))

    def add(self, children):
        return BinOp(ArithOp.ADD, children[0], children[1])

    def sub(self, children):
        return BinOp(ArithOp.SUB, children[0], children[1])

    def mul(self, children):
        return BinOp(ArithOp.MUL, children[0], children[1])

    # labels and declarations
    @v_args(meta=True)
    def receive(self, meta, children):
        pattern = children[0]
        if has_arithmetic(pattern):
            self._error(ErrorCode.PATTERN_ARITHMETIC,
                        f"receive pattern may not contain arithmetic: {pattern}", _span_of(meta))
            return None
        return Receive(pattern)

    def send(self, children):
        return Send(children[0], children[1])

    @v_args(meta=True)
    def transition(self, meta, children):
        source, label, target = children
        return _EdgeSpec(
            self._state(source), label, self._state(target), _span_of(meta), _span_of(source)
        )

    def _state(self, token: Token) -> str:
        if token in RESERVED_WORDS:
            self._error(ErrorCode.SYNTAX_ERROR, _reserved(str(token)), _span_of(token))
        return str(token)

    def initial(self, children):
        return ("initial", [(self._state(children[0]), _span_of(children[0]))])

    def final_decl(self, children):
        return ("final", [(self._state(c), _span_of(c)) for c in children])

    def states_decl(self, children):
        return ("states", [(self._state(c), _span_of(c)) for c in children])

    @v_args(meta=True)
    def machine(self, meta, children):
        pid_token, *rest = children
        spec = _MachineSpec(Pid(int(pid_token[1:])), _span_of(meta), ("", _span_of(meta)))
        for item in rest:
            if isinstance(item, _EdgeSpec):
                spec.edges.append(item)
            elif item[0] == "initial":
                spec.initial = item[1][0]
            elif item[0] == "final":
                spec.finals = item[1]
            else:
                spec.declared = item[1]
        return spec

    def start(self, children):
        return list(children)


def _syntax_error(exc: UnexpectedInput, text: str) -> ParseError:
    if isinstance(exc, UnexpectedToken):
        if exc.token in RESERVED_WORDS and "NAME" in exc.expected:
            message = _reserved(str(exc.token))
            return ParseError(ErrorCode.SYNTAX_ERROR, message, _span_of(exc.token))
        misplaced = _RESERVED_SOURCE.search(text)
        if misplaced is not None:
            line = text.count("\n", 0, misplaced.start()) + 1
            column = misplaced.start() - text.rfind("\n", 0, misplaced.start())
            span = Span(line, column, line, column + len(misplaced.group(1)))
            return ParseError(ErrorCode.SYNTAX_ERROR, _reserved(misplaced.group(1)), span)
        expected = sorted(_DISPLAY.get(name, name) for name in exc.expected)
        found = _DISPLAY["$END"] if exc.token.type == "$END" else f"`{exc.token}`"
        if len(expected) == 1:
            wanted = f"`{expected[0]}`"
        else:
            wanted = "one of " + ", ".join(f"`{e}`" for e in expected)
        message = f"expected {wanted}, found {found}"
        span = _span_of(exc.token)
    elif isinstance(exc, UnexpectedCharacters):
        message = f"unexpected character `{exc.char}`"
        span = Span(exc.line, exc.column, exc.line, exc.column + 1)
    else:
        message = "unexpected end of input"
        span = Span(max(exc.line, 1), max(exc.column, 1), max(exc.line, 1), max(exc.column, 1) + 1)
    return ParseError(ErrorCode.SYNTAX_ERROR, message, span)


def _build_caa(spec: _MachineSpec, spans: SourceMap) -> Caa:
    order: dict[str, None] = {}

    def mention(name: str, span: Span) -> None:
        order.setdefault(name, None)
        spans.states.setdefault((spec.pid, name), span)

    # a state is located by its first outgoing transition when it has one
    for edge in spec.edges:
        spans.states.setdefault((spec.pid, edge.source), edge.source_span)

    for name, span in spec.declared:
        mention(name, span)
    mention(*spec.initial)
    for edge in spec.edges:
        mention(edge.source, edge.source_span)
        mention(edge.target, edge.span)
    for name, span in spec.finals:
        mention(name, span)

    for index, edge in enumerate(spec.edges):
        spans.edges[(spec.pid, index)] = edge.span
    spans.machines[spec.pid] = spec.span

    return Caa(
        states=tuple(order),
        initial=spec.initial[0],
        finals=frozenset(name for name, _ in spec.finals),
        edges=tuple(Transition(e.source, e.label, e.target) for e in spec.edges),
    )


def parse_protocol(text: str) -> ProtocolDoc:
    """
    Parse protocol text and validate the result.

    Returns:
        ProtocolDoc carrying the protocol together with every validation
        issue, each located in the source

    Raises:
        ProtocolSyntaxError: the text is not a protocol (syntax errors,
            duplicate machines, arithmetic in patterns, oversized integers)
    """
    try:
        tree = parser.parse(text)
    except UnexpectedInput as exc:
        raise ProtocolSyntaxError([_syntax_error(exc, text)]) from None

    builder = _ProtocolBuilder()
    try:
        specs: list[_MachineSpec] = builder.transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, ValueError):
            span = _span_of(getattr(exc.obj, "meta", None))
            error = ParseError(ErrorCode.SYNTAX_ERROR, str(exc.orig_exc), span)
            raise ProtocolSyntaxError([error]) from None
        raise

    errors = list(builder.errors)
    seen: dict[Pid, Span] = {}
    for spec in specs:
        if spec.pid in seen:
            errors.append(ParseError(
                ErrorCode.DUPLICATE_MACHINE,
                f"machine {spec.pid} is already declared at {seen[spec.pid]}",
                spec.span,
            ))
        seen.setdefault(spec.pid, spec.span)
    if errors:
        raise ProtocolSyntaxError(sorted(errors, key=lambda e: (e.span.line, e.span.column)))

    spans = SourceMap()
    protocol = Protocol(tuple(Machine(spec.pid, _build_caa(spec, spans)) for spec in specs))
    issues = tuple(
        dataclasses.replace(issue, span=spans.locate(issue.machine, issue.state))
        for issue in validate_protocol(protocol)
    )
    logger.debug("parsed %d machines, %d issues", protocol.arity, len(issues))
    return ProtocolDoc(text, protocol, issues, spans)

