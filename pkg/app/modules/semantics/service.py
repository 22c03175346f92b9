"""
Step relation of a protocol: initial configuration, the pick function and
the SEND/RECV rules, plus protocol-level validation.
"""
import dataclasses
import logging
from typing import Optional, Sequence

from app.constants.enums import IssueCode, PayloadMode, Severity, StepErrorKind
from app.core.config import settings
from app.core.exceptions import EvalError, StepError
from app.modules.automaton.models import Caa, ReceiveState, Send, SendState, ValidationIssue
from app.modules.automaton.service import validate
from app.modules.semantics.models import (
    GlobalState,
    LocalState,
    Pick,
    Protocol,
    Received,
    Sent,
    Successor,
    TaggedMessage,
)
from app.modules.terms.models import EMPTY_ENV, Pid, Var
from app.modules.terms.service import evaluate, match, substitute

logger = logging.getLogger(__name__)


def initial_state(protocol: Protocol) -> GlobalState:
    """Every machine at its initial state with an empty mailbox and environment."""
    return GlobalState(tuple(LocalState(m.caa.initial, (), EMPTY_ENV) for m in protocol))


def pick(caa: Caa, state: str, mailbox: Sequence[TaggedMessage]) -> Optional[Pick]:
    """
    Select the first mailbox message matching any pattern enabled at
    `state`, and the least pattern (in receive order) it matches.

    Returns None when no message matches.
    """
    patterns = caa.receive_order(state)
    for index, message in enumerate(mailbox):
        for pattern in patterns:
            env = match(message.value, pattern)
            if env is not None:
                return Pick(index, pattern, env)
    return None


def _resolve_target(protocol: Protocol, sender: Pid, local: LocalState, label: Send) -> Pid:
    target = label.target
    if isinstance(target, Var):
        bound = local.env.get(target.name)
        if bound is None:
            raise StepError(StepErrorKind.UNKNOWN_TARGET, str(sender), local.state, str(label),
                            f"variable {target.name} is unbound")
        if not isinstance(bound, Pid):
            raise StepError(StepErrorKind.UNKNOWN_TARGET, str(sender), local.state, str(label),
                            f"{target.name} is bound to {bound}, which is not a process id")
        target = bound
    if target == sender:
        raise StepError(StepErrorKind.SELF_MESSAGE, str(sender), local.state, str(label),
                        "a machine may not send to itself")
    if protocol.index_of(target) is None:
        raise StepError(StepErrorKind.UNKNOWN_TARGET, str(sender), local.state, str(label),
                        f"{target} is not a machine of this protocol")
    return target


def step(
    protocol: Protocol,
    g: GlobalState,
    depth: int = 0,
    payloads: Optional[PayloadMode] = None
) -> tuple[Successor, ...]:
    """
    All successors of a configuration, ordered by the machine that moves.

    Each machine contributes at most one successor: a send state sends its
    only label, a receive state consumes whatever the pick function
    selects, and a terminal state (or a receive state with nothing
    matching) does nothing.

    Args:
        protocol: Protocol being run
        g: Configuration to expand
        depth: Path length of `g`; stamped on sent messages
        payloads: Evaluation mode for send payloads, settings.OPEN_PAYLOADS
            when omitted

    Raises:
        StepError: self-send, unresolvable target, or payload evaluation
            failure
    """
    allow_open = (payloads or settings.OPEN_PAYLOADS) is PayloadMode.SYMBOLIC
    successors: list[Successor] = []

    for i, (machine, local) in enumerate(zip(protocol.machines, g.locals)):
        behaviour = machine.caa.behaviour(local.state)

        if isinstance(behaviour, SendState):
            label = behaviour.label
            target = _resolve_target(protocol, machine.pid, local, label)
            try:
                value = evaluate(substitute(local.env, label.payload), allow_open=allow_open)
            except EvalError as exc:
                raise StepError(StepErrorKind.EVAL, str(machine.pid), local.state, str(label),
                                exc.message) from exc
            j = protocol.index_of(target)
            receiver = g.locals[j]
            message = TaggedMessage(value, machine.pid, depth)
            nxt = g.replace(i, dataclasses.replace(local, state=behaviour.next))
            delivered = dataclasses.replace(receiver, mailbox=receiver.mailbox + (message,))
            nxt = nxt.replace(j, delivered)
            successors.append(Successor(Sent(machine.pid, target, value), nxt))

        elif isinstance(behaviour, ReceiveState):
            chosen = pick(machine.caa, local.state, local.mailbox)
            if chosen is None:
                continue
            k = chosen.index
            consumed = local.mailbox[k]
            updated = LocalState(
                behaviour.target_of(chosen.pattern),
                local.mailbox[:k] + local.mailbox[k + 1:],
                local.env.merge(chosen.env),
            )
            successors.append(Successor(
                Received(machine.pid, consumed.value, chosen.pattern, k),
                g.replace(i, updated),
            ))

    return tuple(successors)


def validate_protocol(protocol: Protocol) -> list[ValidationIssue]:
    """
    Per-machine validation plus the checks that need the whole protocol:
    literal self-sends and literal targets outside the protocol.
    """
    issues: list[ValidationIssue] = []
    for machine in protocol:
        issues.extend(
            dataclasses.replace(issue, machine=machine.pid) for issue in validate(machine.caa)
        )
        for edge in machine.caa.edges:
            label = edge.label
            if not isinstance(label, Send) or not isinstance(label.target, Pid):
                continue
            if label.target == machine.pid:
                issues.append(ValidationIssue(
                    IssueCode.SELF_SEND, Severity.ERROR,
                    f"{edge} sends to its own machine", edge.source, machine.pid
                ))
            elif protocol.index_of(label.target) is None:
                issues.append(ValidationIssue(
                    IssueCode.UNKNOWN_PID, Severity.ERROR,
                    f"{edge} targets {label.target}, which is not in the protocol",
                    edge.source, machine.pid
                ))
    return issues
