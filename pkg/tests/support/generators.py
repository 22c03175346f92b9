"""
Hypothesis strategies for terms, automata and whole protocols.
"""
from hypothesis import strategies as st

from app.modules.automaton.models import Caa, Receive, Send, Transition
from app.modules.semantics.models import Machine, Protocol
from app.modules.terms.models import ArithOp, Atom, BinOp, Int, Pid, Tuple, Var

ATOMS = ["a", "b", "ok", "get", "put", "ping"]
VARS = ["X", "Y", "P"]

# Closed payloads and the receive patterns that can consume them.
PAYLOADS = [Atom("a"), Atom("b"), Atom("c"), Tuple((Atom("t"), Int(1))), Tuple((Atom("t"), Int(2)))]
PATTERNS = [
    Atom("a"),
    Atom("b"),
    Atom("c"),
    Tuple((Atom("t"), Var("X"))),
    Tuple((Atom("t"), Int(2))),
    Var("Y"),
]

atoms = st.sampled_from(ATOMS).map(Atom)
variables = st.sampled_from(VARS).map(Var)
ints = st.integers(min_value=-50, max_value=50).map(Int)
pids = st.integers(min_value=0, max_value=9).map(Pid)


def patterns(max_leaves: int = 6):
    """Receive patterns: no arithmetic."""
    return st.recursive(
        st.one_of(atoms, variables, ints, pids),
        lambda children: st.lists(children, max_size=3).map(lambda xs: Tuple(tuple(xs))),
        max_leaves=max_leaves,
    )


def values(max_leaves: int = 6):
    """Closed values: no variables, no arithmetic."""
    return st.recursive(
        st.one_of(atoms, ints, pids),
        lambda children: st.lists(children, max_size=3).map(lambda xs: Tuple(tuple(xs))),
        max_leaves=max_leaves,
    )


def expressions(max_leaves: int = 6):
    """Send payloads, arithmetic allowed anywhere."""
    return st.recursive(
        st.one_of(atoms, variables, ints, pids),
        lambda children: st.one_of(
            st.lists(children, max_size=3).map(lambda xs: Tuple(tuple(xs))),
            st.builds(BinOp, st.sampled_from(list(ArithOp)), children, children),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def caas(draw, max_states: int = 5):
    """Arbitrary automata, possibly mixed or cyclic; for syntax round trips."""
    n = draw(st.integers(min_value=1, max_value=max_states))
    states = [f"s{k}" for k in range(n)]
    edges = []
    for _ in range(draw(st.integers(min_value=0, max_value=2 * n))):
        source = draw(st.sampled_from(states))
        target = draw(st.sampled_from(states))
        if draw(st.booleans()):
            label = Receive(draw(patterns()))
        else:
            label = Send(draw(st.one_of(variables, pids)), draw(expressions()))
        edges.append(Transition(source, label, target))
    finals = draw(st.sets(st.sampled_from(states)))
    return Caa(tuple(states), draw(st.sampled_from(states)), frozenset(finals), tuple(edges))


@st.composite
def any_protocols(draw, max_machines: int = 4):
    ids = draw(st.lists(
        st.integers(min_value=0, max_value=9), min_size=1, max_size=max_machines, unique=True
    ))
    return Protocol(tuple(Machine(Pid(i), draw(caas())) for i in ids))


@st.composite
def _acyclic_caa(draw, pid: Pid, peers: list[Pid], max_states: int, max_sends: int):
    """
    Well-formed automaton whose transitions only move forward, so every
    run terminates.
    """
    n = draw(st.integers(min_value=1, max_value=max_states))
    states = [f"q{k}" for k in range(n)]
    edges = []
    sends = 0
    for k, state in enumerate(states[:-1]):
        kinds = ["receive", "terminal"] + (["send"] if peers and sends < max_sends else [])
        kind = draw(st.sampled_from(kinds))
        later = st.sampled_from(states[k + 1:])
        if kind == "send":
            sends += 1
            label = Send(draw(st.sampled_from(peers)), draw(st.sampled_from(PAYLOADS)))
            edges.append(Transition(state, label, draw(later)))
        elif kind == "receive":
            chosen = draw(st.lists(st.sampled_from(PATTERNS), min_size=1, max_size=2, unique=True))
            edges.extend(Transition(state, Receive(p), draw(later)) for p in chosen)
    finals = draw(st.sets(st.sampled_from(states)))
    return Caa(tuple(states), states[0], frozenset(finals), tuple(edges))


@st.composite
def tiny_protocols(draw, max_machines: int = 3, max_states: int = 3, max_sends: int = 2):
    """Small well-formed acyclic protocols with literal targets."""
    arity = draw(st.integers(min_value=1, max_value=max_machines))
    members = [Pid(i) for i in range(arity)]
    return Protocol(tuple(
        Machine(
            pid, draw(_acyclic_caa(pid, [p for p in members if p != pid], max_states, max_sends))
        )
        for pid in members
    ))


@st.composite
def binary_protocols(draw, max_states: int = 4):
    """Two machines that only ever message each other."""
    first, second = Pid(1), Pid(2)
    return Protocol((
        Machine(first, draw(_acyclic_caa(first, [second], max_states, max_states))),
        Machine(second, draw(_acyclic_caa(second, [first], max_states, max_states))),
    ))
