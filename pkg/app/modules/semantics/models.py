"""
Runtime structures of a protocol: machines, local and global states,
step events, traces and exploration results.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from app.constants.enums import BoundKind
from app.core.exceptions import MalformedAutomatonError
from app.modules.automaton.models import Caa
from app.modules.terms.models import EMPTY_ENV, Env, Pid, Term


@dataclass(frozen=True, slots=True)
class TaggedMessage:
    """
    A mailbox entry. The origin step is bookkeeping only and takes no part
    in equality, so configurations reached along different paths coincide.
    """
    value: Term
    sender: Pid
    origin_step: int = field(default=0, compare=False)

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, slots=True)
class LocalState:
    state: str
    mailbox: tuple[TaggedMessage, ...] = ()
    env: Env = EMPTY_ENV


@dataclass(frozen=True, slots=True)
class GlobalState:
    locals: tuple[LocalState, ...]

    def __len__(self) -> int:
        return len(self.locals)

    def __getitem__(self, index: int) -> LocalState:
        return self.locals[index]

    def __iter__(self) -> Iterator[LocalState]:
        return iter(self.locals)

    def replace(self, index: int, local: LocalState) -> "GlobalState":
        locals_ = list(self.locals)
        locals_[index] = local
        return GlobalState(tuple(locals_))


@dataclass(frozen=True, slots=True)
class Machine:
    pid: Pid
    caa: Caa


@dataclass(frozen=True)
class Protocol:
    machines: tuple[Machine, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "machines", tuple(self.machines))
        index: dict[Pid, int] = {}
        for position, machine in enumerate(self.machines):
            if machine.pid in index:
                raise MalformedAutomatonError(f"process id {machine.pid} is declared twice")
            index[machine.pid] = position
        object.__setattr__(self, "_index", index)

    @property
    def arity(self) -> int:
        return len(self.machines)

    @property
    def pids(self) -> tuple[Pid, ...]:
        return tuple(m.pid for m in self.machines)

    def index_of(self, pid: Pid) -> Optional[int]:
        return self._index.get(pid)

    def machine(self, pid: Pid) -> Machine:
        return self.machines[self._index[pid]]

    def __iter__(self) -> Iterator[Machine]:
        return iter(self.machines)

    def __len__(self) -> int:
        return len(self.machines)


@dataclass(frozen=True, slots=True)
class Pick:
    """Outcome of a successful mailbox scan."""
    index: int
    pattern: Term
    env: Env


@dataclass(frozen=True, slots=True)
class Sent:
    sender: Pid
    target: Pid
    value: Term

    @property
    def machine(self) -> Pid:
        return self.sender

    def __str__(self) -> str:
        return f"{self.sender} sends {self.value} to {self.target}"


@dataclass(frozen=True, slots=True)
class Received:
    by: Pid
    value: Term
    pattern: Term
    mailbox_position: int

    @property
    def machine(self) -> Pid:
        return self.by

    def __str__(self) -> str:
        return (
            f"{self.by} receives {self.value} with ?{self.pattern} "
            f"at position {self.mailbox_position}"
        )


StepEvent = Union[Sent, Received]


@dataclass(frozen=True, slots=True)
class Successor:
    event: StepEvent
    state: GlobalState


@dataclass(frozen=True)
class Trace:
    states: tuple[GlobalState, ...]
    events: tuple[StepEvent, ...] = ()
    truncated: Optional[BoundKind] = None

    def __post_init__(self):
        if len(self.events) != len(self.states) - 1:
            raise ValueError("a trace has exactly one event between consecutive states")

    @property
    def terminal(self) -> GlobalState:
        return self.states[-1]

    @property
    def is_maximal(self) -> bool:
        return self.truncated is None

    def __len__(self) -> int:
        return len(self.states)


@dataclass
class ExplorationResult:
    """
    Reachability graph plus the maximal traces through it.

    `graph` maps every discovered configuration to its successors, in
    discovery order; configurations cut by a bound map to an empty tuple
    and are listed in `truncated`.
    """
    protocol: Protocol
    initial: GlobalState
    graph: dict[GlobalState, tuple[Successor, ...]]
    traces: tuple[Trace, ...]
    truncated: dict[GlobalState, BoundKind] = field(default_factory=dict)
    bound: Optional[BoundKind] = None

    @property
    def complete(self) -> bool:
        return self.bound is None

    @property
    def verdict(self) -> str:
        return "Complete" if self.complete else f"BoundExceeded({self.bound.value})"

    @property
    def reachable_states(self) -> int:
        return len(self.graph)

    @property
    def edge_count(self) -> int:
        return sum(len(succs) for succs in self.graph.values())

    def successors(self, state: GlobalState) -> tuple[Successor, ...]:
        return self.graph.get(state, ())

    def is_terminal(self, state: GlobalState) -> bool:
        return state not in self.truncated and not self.graph.get(state)
