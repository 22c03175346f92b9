"""
Communicating actor automaton: control states, initial and final states,
receive and send labels and the transition relation.

A Caa keeps its raw edge list so that ill-formed automata (mixed states,
several sends from one state) can still be built and then reported by
validation. The per-state views used by the step relation require a
well-formed state.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from app.constants.enums import IssueCode, Severity
from app.core.exceptions import MalformedAutomatonError, UnknownStateError
from app.modules.terms.models import Pid, Term, Var
from app.modules.terms.service import has_arithmetic


@dataclass(frozen=True, slots=True)
class Span:
    """Source location, 1-based, end exclusive."""
    line: int
    column: int
    end_line: int
    end_column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True, slots=True)
class Receive:
    pattern: Term

    def __post_init__(self):
        if has_arithmetic(self.pattern):
            raise ValueError(f"receive pattern may not contain arithmetic: {self.pattern}")

    def __str__(self) -> str:
        return f"?{self.pattern}"


@dataclass(frozen=True, slots=True)
class Send:
    target: Union[Var, Pid]
    payload: Term

    def __post_init__(self):
        if not isinstance(self.target, (Var, Pid)):
            raise ValueError(f"send target must be a variable or a pid, got {self.target}")

    def __str__(self) -> str:
        return f"{self.target}!{self.payload}"


Label = Union[Receive, Send]


@dataclass(frozen=True, slots=True)
class Transition:
    source: str
    label: Label
    target: str

    def __str__(self) -> str:
        return f"{self.source} -- {self.label} -> {self.target}"


@dataclass(frozen=True, slots=True)
class SendState:
    label: Send
    next: str


@dataclass(frozen=True, slots=True)
class ReceiveState:
    """Receive branches in pattern order; earlier branches take priority."""
    branches: tuple[tuple[Term, str], ...]

    @property
    def patterns(self) -> tuple[Term, ...]:
        return tuple(pattern for pattern, _ in self.branches)

    def target_of(self, pattern: Term) -> str:
        for candidate, target in self.branches:
            if candidate == pattern:
                return target
        raise KeyError(str(pattern))


@dataclass(frozen=True, slots=True)
class TerminalState:
    pass


StateBehaviour = Union[SendState, ReceiveState, TerminalState]


@dataclass(frozen=True)
class Caa:
    states: tuple[str, ...]
    initial: str
    finals: frozenset[str] = frozenset()
    edges: tuple[Transition, ...] = ()
    _outgoing: dict = field(init=False, repr=False, compare=False, hash=False)
    _behaviours: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "edges", tuple(self.edges))

        if not self.states:
            raise MalformedAutomatonError("automaton has no states")
        if len(set(self.states)) != len(self.states):
            dupes = sorted({s for s in self.states if self.states.count(s) > 1})
            raise MalformedAutomatonError(f"duplicate states: {', '.join(dupes)}", dupes[0])
        if any(not s for s in self.states):
            raise MalformedAutomatonError("state names must be non-empty")

        known = set(self.states)
        if self.initial not in known:
            raise MalformedAutomatonError(
                f"initial state '{self.initial}' is not a state", self.initial
            )
        stray = sorted(self.finals - known)
        if stray:
            raise MalformedAutomatonError(f"final state '{stray[0]}' is not a state", stray[0])

        outgoing: dict[str, list[Transition]] = {s: [] for s in self.states}
        for edge in self.edges:
            for end in (edge.source, edge.target):
                if end not in known:
                    raise MalformedAutomatonError(
                        f"transition '{edge}' uses unknown state '{end}'", end
                    )
            outgoing[edge.source].append(edge)
        object.__setattr__(self, "_outgoing", {s: tuple(es) for s, es in outgoing.items()})
        object.__setattr__(self, "_behaviours", {})

    @classmethod
    def build(
        cls,
        initial: str,
        behaviours: Mapping[str, StateBehaviour],
        finals: Iterable[str] = ()
    ) -> "Caa":
        """Build from the per-state form; every state must appear in `behaviours`."""
        edges: list[Transition] = []
        for state, behaviour in behaviours.items():
            if isinstance(behaviour, SendState):
                edges.append(Transition(state, behaviour.label, behaviour.next))
            elif isinstance(behaviour, ReceiveState):
                edges.extend(Transition(state, Receive(p), nxt) for p, nxt in behaviour.branches)
        return cls(tuple(behaviours), initial, frozenset(finals), tuple(edges))

    def outgoing(self, state: str) -> tuple[Transition, ...]:
        try:
            return self._outgoing[state]
        except KeyError:
            raise UnknownStateError(state) from None

    def behaviour(self, state: str) -> StateBehaviour:
        """
        Per-state view of the transition relation.

        Raises:
            UnknownStateError: state is not part of the automaton
            MalformedAutomatonError: state mixes sends and receives, or has
                several sends
        """
        cached = self._behaviours.get(state)
        if cached is None:
            cached = self._behaviours[state] = self._classify(state)
        return cached

    def _classify(self, state: str) -> StateBehaviour:
        edges = self.outgoing(state)
        sends = [e for e in edges if isinstance(e.label, Send)]
        receives = [e for e in edges if isinstance(e.label, Receive)]
        if sends and receives:
            raise MalformedAutomatonError(f"state '{state}' mixes send and receive labels", state)
        if len(sends) > 1:
            raise MalformedAutomatonError(f"state '{state}' has {len(sends)} send labels", state)
        if sends:
            return SendState(sends[0].label, sends[0].target)
        if receives:
            return ReceiveState(tuple((e.label.pattern, e.target) for e in receives))
        return TerminalState()

    def is_final(self, state: str) -> bool:
        return state in self.finals

    def receive_order(self, state: str) -> tuple[Term, ...]:
        """Patterns enabled at `state`, least first."""
        return tuple(e.label.pattern for e in self.outgoing(state) if isinstance(e.label, Receive))

    def precedes(self, state: str, first: Term, second: Term) -> bool:
        order = self.receive_order(state)
        if first not in order or second not in order:
            return False
        return order.index(first) < order.index(second)

    @property
    def send_labels(self) -> tuple[Send, ...]:
        return tuple(e.label for e in self.edges if isinstance(e.label, Send))

    @property
    def receive_labels(self) -> tuple[Term, ...]:
        seen: list[Term] = []
        for edge in self.edges:
            if isinstance(edge.label, Receive) and edge.label.pattern not in seen:
                seen.append(edge.label.pattern)
        return tuple(seen)

    def successors(self, state: str) -> tuple[str, ...]:
        return tuple(e.target for e in self.outgoing(state))


@dataclass(frozen=True, slots=True)
class ValidationIssue:
    code: IssueCode
    severity: Severity
    message: str
    state: Optional[str] = None
    machine: Optional[Pid] = None
    span: Optional[Span] = None

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def __str__(self) -> str:
        where = []
        if self.span is not None:
            where.append(str(self.span))
        if self.machine is not None:
            where.append(f"machine {self.machine}")
        if self.state is not None:
            where.append(f"state {self.state}")
        location = f" ({', '.join(where)})" if where else ""
        return f"{self.code.value}{location}: {self.message}"
