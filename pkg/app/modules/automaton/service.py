"""
Automaton well-formedness checks and state classification.
"""
from collections import deque

from app.constants.enums import IssueCode, Severity, StateKind
from app.modules.automaton.models import (
    Caa,
    Receive,
    ReceiveState,
    Send,
    SendState,
    ValidationIssue,
)
from app.modules.terms.service import repeated_variables


def enabled_kind(caa: Caa, state: str) -> StateKind:
    """
    Classify a control state.

    Raises:
        UnknownStateError: state is not part of the automaton
        MalformedAutomatonError: the state is mixed or has several sends
    """
    behaviour = caa.behaviour(state)
    if isinstance(behaviour, SendState):
        return StateKind.SEND
    if isinstance(behaviour, ReceiveState):
        return StateKind.RECEIVE
    return StateKind.TERMINAL


def reachable_states(caa: Caa) -> set[str]:
    seen = {caa.initial}
    queue = deque([caa.initial])
    while queue:
        for nxt in caa.successors(queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def validate(caa: Caa) -> list[ValidationIssue]:
    """
    Report every well-formedness problem of one automaton.

    Issues are returned in state declaration order. Unreachable states and
    final states with a send are warnings; everything else is an error.
    Checks that need the whole protocol (self-sends, unknown pids) live in
    the semantics module.
    """
    issues: list[ValidationIssue] = []
    reachable = reachable_states(caa)

    for state in caa.states:
        edges = caa.outgoing(state)
        sends = [e for e in edges if isinstance(e.label, Send)]
        receives = [e for e in edges if isinstance(e.label, Receive)]

        if sends and receives:
            issues.append(ValidationIssue(
                IssueCode.MIXED_STATE, Severity.ERROR,
                f"state {state} has both receive and send labels", state
            ))
        if len(sends) > 1:
            issues.append(ValidationIssue(
                IssueCode.NON_AFFINE_SEND, Severity.ERROR,
                f"state {state} has {len(sends)} send labels, at most one is allowed", state
            ))

        seen_patterns = []
        for edge in receives:
            pattern = edge.label.pattern
            repeated = repeated_variables(pattern)
            if repeated:
                issues.append(ValidationIssue(
                    IssueCode.NON_LINEAR_PATTERN, Severity.ERROR,
                    f"pattern {pattern} repeats {', '.join(repeated)}", state
                ))
            if pattern in seen_patterns:
                issues.append(ValidationIssue(
                    IssueCode.DUPLICATE_PATTERN, Severity.ERROR,
                    f"pattern {pattern} appears more than once in state {state}", state
                ))
            seen_patterns.append(pattern)

        if sends and caa.is_final(state):
            issues.append(ValidationIssue(
                IssueCode.FINAL_WITH_SEND, Severity.WARNING,
                f"final state {state} has an outgoing send", state
            ))
        if state not in reachable:
            issues.append(ValidationIssue(
                IssueCode.UNREACHABLE_STATE, Severity.WARNING,
                f"state {state} is not reachable from {caa.initial}", state
            ))

    return issues
