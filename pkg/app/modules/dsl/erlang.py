"""
Erlang skeleton emitter: one module per machine, one function per control
state, plain processes with `!` and `receive`.
"""
import re
from pathlib import Path
from typing import Any, Dict

from jinja2 import Environment, FileSystemLoader

from app.constants.common import ERLANG_MODULE_PREFIX
from app.modules.automaton.models import ReceiveState, SendState
from app.modules.semantics.models import Machine, Protocol
from app.modules.terms.models import Atom, BinOp, Int, Pid, Term, Tuple, Var

TEMPLATES_DIR = Path(__file__).parent.parent.parent / "templates" / "erlang"
jinja_env = Environment(
    loader=FileSystemLoader(str(TEMPLATES_DIR)),
    autoescape=False,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)

RESERVED = frozenset({
    "after", "and", "andalso", "band", "begin", "bnot", "bor", "bsl", "bsr", "bxor",
    "case", "catch", "cond", "div", "else", "end", "fun", "if", "let", "maybe", "not",
    "of", "or", "orelse", "receive", "rem", "try", "when", "xor",
})
BARE_ATOM = re.compile(r"[a-z][a-zA-Z0-9_@]*")


def module_name(pid: Pid) -> str:
    return f"{ERLANG_MODULE_PREFIX}{pid.id}"


def erlang_atom(name: str) -> str:
    if BARE_ATOM.fullmatch(name) and name not in RESERVED:
        return name
    return "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


def pattern_var(name: str) -> str:
    return f"V_{name}"


def pid_var(pid: Pid) -> str:
    return f"Pid_{pid.id}"


def _operand(term: Term, parent: BinOp, right: bool, render) -> str:
    if isinstance(term, BinOp):
        prec = term.op.precedence
        if prec < parent.op.precedence or (right and prec == parent.op.precedence):
            return f"({render(term)})"
    elif isinstance(term, Int) and term.value < 0:
        return f"({term.value})"
    return render(term)


def expression(term: Term) -> str:
    """A payload as an Erlang expression over `Pids` and `Env`."""
    if isinstance(term, Var):
        return f"maps:get({erlang_atom(term.name)}, Env)"
    if isinstance(term, Pid):
        return f"maps:get({term.id}, Pids)"
    if isinstance(term, Atom):
        return erlang_atom(term.name)
    if isinstance(term, Int):
        return str(term.value)
    if isinstance(term, Tuple):
        return "{" + ", ".join(expression(e) for e in term.elements) + "}"
    left = _operand(term.left, term, False, expression)
    right = _operand(term.right, term, True, expression)
    return f"{left} {term.op.value} {right}"


def pattern(term: Term) -> str:
    """A receive pattern; variables become fresh clause variables, pids bound ones."""
    if isinstance(term, Var):
        return pattern_var(term.name)
    if isinstance(term, Pid):
        return pid_var(term)
    if isinstance(term, Atom):
        return erlang_atom(term.name)
    if isinstance(term, Int):
        return str(term.value)
    return "{" + ", ".join(pattern(e) for e in term.elements) + "}"


def _pattern_names(term: Term, kind: type) -> list:
    if isinstance(term, kind):
        return [term]
    if isinstance(term, Tuple):
        return [x for e in term.elements for x in _pattern_names(e, kind)]
    return []


def _env_update(term: Term) -> str:
    names = sorted({v.name for v in _pattern_names(term, Var)})
    if not names:
        return "Env"
    pairs = ", ".join(f"{erlang_atom(n)} => {pattern_var(n)}" for n in names)
    return f"Env#{{{pairs}}}"


def _function(machine: Machine, state: str) -> Dict[str, Any]:
    behaviour = machine.caa.behaviour(state)
    name = erlang_atom(state)
    if isinstance(behaviour, SendState):
        label = behaviour.label
        return {
            "kind": "send",
            "name": name,
            "target": expression(label.target),
            "payload": expression(label.payload),
            "next": erlang_atom(behaviour.next),
        }
    if isinstance(behaviour, ReceiveState):
        named = {p for pat in behaviour.patterns for p in _pattern_names(pat, Pid)}
        pids = sorted(named, key=lambda p: p.id)
        return {
            "kind": "receive",
            "name": name,
            "pid_binds": [f"{pid_var(p)} = maps:get({p.id}, Pids)" for p in pids],
            "clauses": [
                {"pattern": pattern(pat), "next": erlang_atom(nxt), "env": _env_update(pat)}
                for pat, nxt in behaviour.branches
            ],
        }
    return {"kind": "terminal", "name": name}


def emit_module(machine: Machine) -> str:
    caa = machine.caa
    functions = [_function(machine, state) for state in caa.states]
    template = jinja_env.get_template("module.erl.j2")
    return template.render(
        pid=str(machine.pid),
        module=module_name(machine.pid),
        exports=["start/1"] + [f"{f['name']}/2" for f in functions],
        initial=erlang_atom(caa.initial),
        functions=functions,
    )


def emit_erlang(protocol: Protocol) -> Dict[str, str]:
    """
    Erlang source for every machine, keyed by module name.

    The protocol must be well-formed: every state is send-only,
    receive-only or terminal.
    """
    return {module_name(m.pid): emit_module(m) for m in protocol}
