"""
Incoming-message multisets and race detection.

The incoming multiset of machine i at a configuration collects every
message that some enabled step would append to i's mailbox.

A race is a receive state where arrival order decides what is consumed.
When no consumable message has arrived yet, that is an incoming multiset
with two consumable messages. Otherwise it is the first consumable
message in the mailbox together with every message that was waiting to
be sent while it was, if one of those could be consumed too.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from app.constants.enums import PayloadMode
from app.core.exceptions import RequiresCompleteExploration
from app.modules.analysis.models import Multiset, RaceReport, Witness
from app.modules.automaton.models import ReceiveState
from app.modules.semantics.models import (
    ExplorationResult,
    GlobalState,
    Protocol,
    Received,
    Sent,
    Successor,
    Trace,
)
from app.modules.semantics.service import step
from app.modules.terms.models import Pid, Term
from app.modules.terms.service import match

logger = logging.getLogger(__name__)


def _collect(protocol: Protocol, successors: tuple[Successor, ...]) -> dict[Pid, Multiset]:
    incoming: dict[Pid, Multiset] = {pid: Counter() for pid in protocol.pids}
    for succ in successors:
        if isinstance(succ.event, Sent):
            incoming[succ.event.target][succ.event.value] += 1
    return incoming


def incoming_multisets(
    protocol: Protocol,
    g: GlobalState,
    payloads: Optional[PayloadMode] = None
) -> dict[Pid, Multiset]:
    """
    Messages every machine could receive next: the union over all
    successors of what each one appends.
    """
    return _collect(protocol, step(protocol, g, payloads=payloads))


class IncomingIndex:
    """Incoming multisets of explored configurations, computed from graph edges once each."""

    def __init__(self, result: ExplorationResult):
        self.result = result
        self._cache: dict[GlobalState, dict[Pid, Multiset]] = {}

    def __getitem__(self, g: GlobalState) -> dict[Pid, Multiset]:
        incoming = self._cache.get(g)
        if incoming is None:
            incoming = self._cache[g] = _collect(self.result.protocol, self.result.successors(g))
        return incoming

    def largest(self) -> int:
        """Size of the largest incoming multiset anywhere in the graph."""
        return max(
            (sum(ms.values()) for g in self.result.graph for ms in self[g].values()),
            default=0,
        )


def _matching(multiset: Multiset, patterns: tuple[Term, ...]) -> list[tuple[Term, Term]]:
    """(message, least matching pattern) for every matching message, with multiplicity."""
    found = []
    for value, count in multiset.items():
        for pattern in patterns:
            if match(value, pattern) is not None:
                found.extend([(value, pattern)] * count)
                break
    return found


def _content_key(multiset: Multiset) -> frozenset:
    return frozenset(multiset.items())


@dataclass(slots=True)
class _Message:
    """A message addressed to one machine, sent or still waiting to be sent."""
    value: Term
    waiting_since: int
    sent_at: Optional[int] = None


class _RaceScan:
    def __init__(self, result: ExplorationResult):
        self.result = result
        self.protocol = result.protocol
        self.reports: dict[tuple, RaceReport] = {}

    def _pending(self, g: GlobalState, moved: list[int]) -> list[list[_Message]]:
        """Messages each machine could be sent next, with the step their sender started waiting."""
        pending: list[list[_Message]] = [[] for _ in range(self.protocol.arity)]
        for succ in self.result.successors(g):
            event = succ.event
            if isinstance(event, Sent):
                sender = self.protocol.index_of(event.sender)
                target = self.protocol.index_of(event.target)
                pending[target].append(_Message(event.value, moved[sender] + 1))
        return pending

    def _racing_group(
        self,
        x: int,
        patterns: tuple[Term, ...],
        mailbox: list[_Message],
        pending: list[_Message],
    ) -> Optional[tuple[int, list[_Message]]]:
        """
        The group deciding what a receive at step `x` consumes, with the step
        its messages were all waiting together, when two of them could go first.
        """
        def matches(message: _Message) -> bool:
            return any(match(message.value, p) is not None for p in patterns)

        first = next((k for k, message in enumerate(mailbox) if matches(message)), None)
        if first is None:
            # nothing consumable has arrived: whatever arrives first wins
            if sum(1 for message in pending if matches(message)) >= 2:
                return x, pending
            return None

        head = mailbox[first]
        rivals = [m for m in mailbox[first + 1:] + pending if m.waiting_since <= head.sent_at]
        if not any(matches(m) for m in rivals):
            return None
        group = [head] + rivals
        return max(m.waiting_since for m in group), group

    def scan(self, trace_index: int, trace: Trace) -> None:
        arity = self.protocol.arity
        mailboxes: list[list[_Message]] = [[] for _ in range(arity)]
        moved = [-1] * arity

        for x, g in enumerate(trace.states):
            pending = self._pending(g, moved)
            for i, machine in enumerate(self.protocol.machines):
                state = g.locals[i].state
                behaviour = machine.caa.behaviour(state)
                if not isinstance(behaviour, ReceiveState):
                    continue
                found = self._racing_group(x, behaviour.patterns, mailboxes[i], pending[i])
                if found is not None:
                    y, group = found
                    multiset = Counter(m.value for m in group)
                    self._report(trace_index, trace, x, i, state, behaviour, y, multiset)

            if x < len(trace.events):
                self._advance(trace.events[x], x, mailboxes, moved)

    def _advance(self, event, x: int, mailboxes: list[list[_Message]], moved: list[int]) -> None:
        if isinstance(event, Sent):
            sender = self.protocol.index_of(event.sender)
            target = self.protocol.index_of(event.target)
            mailboxes[target].append(_Message(event.value, moved[sender] + 1, x))
            moved[sender] = x
        elif isinstance(event, Received):
            i = self.protocol.index_of(event.by)
            mailboxes[i].pop(event.mailbox_position)
            moved[i] = x

    def _report(
        self, trace_index, trace, x, i, state, behaviour: ReceiveState, y, multiset: Multiset
    ) -> None:
        machine = self.protocol.machines[i]
        key = (machine.pid, state, _content_key(multiset))
        existing = self.reports.get(key)
        if existing is not None:
            if existing.witness_traces[-1] != trace_index:
                existing.witness_traces.append(trace_index)
            return
        matching = _matching(multiset, behaviour.patterns)
        witnesses = tuple(dict.fromkeys(
            Witness(value, pattern, behaviour.target_of(pattern)) for value, pattern in matching
        ))
        self.reports[key] = RaceReport(
            machine=machine.pid,
            state=state,
            group_index=y,
            racing_messages=tuple(sorted(multiset.elements(), key=str)),
            matching_messages=len(matching),
            witnesses=witnesses,
            trace_index=trace_index,
            trace_prefix=Trace(trace.states[:x + 1], trace.events[:x]),
            witness_traces=[trace_index],
        )


def detect_races(result: ExplorationResult) -> list[RaceReport]:
    """
    Race reports over every maximal trace, deduplicated by machine, state
    and group content, in order of first discovery.

    Raises:
        RequiresCompleteExploration: the exploration was cut by a bound
    """
    if not result.complete:
        raise RequiresCompleteExploration(result.bound.value)
    scan = _RaceScan(result)
    for index, trace in enumerate(result.traces):
        scan.scan(index, trace)
    reports = list(scan.reports.values())
    logger.info("race scan over %d traces found %d reports", len(result.traces), len(reports))
    return reports
