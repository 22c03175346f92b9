"""
Convergence of binary protocols.

Two machines that never message themselves cannot race: every incoming
group holds at most one message, so every interleaving ends in the same
configuration. The check confirms the preconditions statically where it
can, then confirms the outcome on the explored state space.
"""
import logging
from itertools import pairwise
from typing import Iterator, Optional, Sequence

from app.constants.enums import ConvergenceOutcome, PayloadMode, StepErrorKind
from app.core.exceptions import ConvergencePreconditionError, StepError
from app.modules.analysis.models import ConvergenceResult, Violation
from app.modules.analysis.service import IncomingIndex
from app.modules.automaton.models import Receive, Send
from app.modules.semantics.explorer import explore, terminal_states
from app.modules.semantics.models import Machine, Protocol, Trace
from app.modules.semantics.schemas import Bounds
from app.modules.semantics.service import validate_protocol
from app.modules.terms.models import BinOp, Pid, Term, Tuple, Var

logger = logging.getLogger(__name__)

Path = tuple[int, ...]


def _paths_of(pattern: Term, name: str, path: Path = ()) -> Iterator[Path]:
    if isinstance(pattern, Var) and pattern.name == name:
        yield path
    elif isinstance(pattern, Tuple):
        for k, element in enumerate(pattern.elements):
            yield from _paths_of(element, name, path + (k,))


def _may_match(payload: Term, pattern: Term) -> bool:
    """Whether some instantiation of `payload` could match `pattern`."""
    if isinstance(pattern, Var):
        return True
    if isinstance(payload, Var):
        return True
    if isinstance(payload, BinOp):
        return not isinstance(pattern, Tuple)
    if isinstance(payload, Tuple) and isinstance(pattern, Tuple):
        return len(payload.elements) == len(pattern.elements) and all(
            _may_match(a, b) for a, b in zip(payload.elements, pattern.elements)
        )
    return payload == pattern


def _at(term: Term, path: Path) -> Optional[Term]:
    for k in path:
        if not isinstance(term, Tuple) or k >= len(term.elements):
            return None
        term = term.elements[k]
    return term


def _target_names_peer(machine: Machine, peer: Machine, name: str) -> bool:
    """
    Every way `machine` can bind `name` takes it from a peer payload that
    carries the peer's own pid at that position.
    """
    bindings = [
        (edge.label.pattern, path)
        for edge in machine.caa.edges if isinstance(edge.label, Receive)
        for path in _paths_of(edge.label.pattern, name)
    ]
    if not bindings:
        return False
    peer_payloads = [edge.label.payload for edge in peer.caa.edges if isinstance(edge.label, Send)]
    for pattern, path in bindings:
        for payload in peer_payloads:
            if _may_match(payload, pattern) and _at(payload, path) != peer.pid:
                return False
    return True


def check_convergence_preconditions(protocol: Protocol) -> list[Violation]:
    """
    Everything standing between the protocol and the binary convergence
    class. Violations marked `unknown` could not be decided statically.
    """
    if protocol.arity != 2:
        message = f"protocol has {protocol.arity} machines, convergence needs exactly 2"
        return [Violation("Arity", message)]

    violations = [
        Violation(issue.code.value, str(issue), issue.machine)
        for issue in validate_protocol(protocol) if issue.is_error
    ]
    first, second = protocol.machines
    for machine, peer in ((first, second), (second, first)):
        for edge in machine.caa.edges:
            target = edge.label.target if isinstance(edge.label, Send) else None
            if isinstance(target, Var) and not _target_names_peer(machine, peer, target.name):
                violations.append(Violation(
                    "Unknown",
                    f"{edge} in machine {machine.pid}: "
                    f"cannot show that {target} always names {peer.pid}",
                    machine.pid,
                    unknown=True,
                ))
    return violations


def _first_difference(a: Trace, b: Trace) -> int:
    for position, (left, right) in enumerate(zip(a.states, b.states)):
        if left != right:
            return position
    return min(len(a.states), len(b.states))


def divergence_witnesses(traces: Sequence[Trace]) -> Optional[tuple[Trace, Trace]]:
    """
    The two traces with distinct terminal configurations that share the
    longest prefix, or None when they all end in the same configuration.

    Traces are listed in depth-first order, so the longest shared prefix
    between differing ends is always found between neighbours.
    """
    best: Optional[tuple[Trace, Trace]] = None
    for a, b in pairwise(traces):
        if a.terminal == b.terminal:
            continue
        if best is None or _first_difference(a, b) > _first_difference(*best):
            best = (a, b)
    return best


def check_convergence(
    protocol: Protocol,
    bounds: Optional[Bounds] = None,
    jobs: Optional[int] = None,
    payloads: Optional[PayloadMode] = None
) -> ConvergenceResult:
    """
    Decide whether every maximal trace of a binary protocol ends in the
    same configuration.

    Raises:
        ConvergencePreconditionError: the protocol is outside the binary class,
            or a machine messaged itself while exploring
    """
    violations = check_convergence_preconditions(protocol)
    hard = [v for v in violations if not v.unknown]
    if hard:
        raise ConvergencePreconditionError(hard)

    try:
        result = explore(protocol, bounds, jobs, payloads)
    except StepError as e:
        if e.kind is StepErrorKind.SELF_MESSAGE:
            raise ConvergencePreconditionError([Violation("SelfMessage", e.message)]) from e
        raise

    unknown = tuple(violations)
    if not result.complete:
        return ConvergenceResult(
            ConvergenceOutcome.UNKNOWN,
            trace_count=len(result.traces),
            reason=f"exploration stopped at bound {result.bound.value}",
            violations=unknown,
        )

    max_incoming = IncomingIndex(result).largest()
    terminals = terminal_states(result)
    if len(terminals) <= 1:
        logger.info("converges over %d traces", len(result.traces))
        return ConvergenceResult(
            ConvergenceOutcome.CONVERGES,
            traces=result.traces[:1],
            trace_count=len(result.traces),
            max_incoming=max_incoming,
            violations=unknown,
        )

    witness = divergence_witnesses(result.traces)
    logger.info("diverges: %d distinct terminal configurations", len(terminals))
    return ConvergenceResult(
        ConvergenceOutcome.DIVERGES,
        traces=witness,
        trace_count=len(result.traces),
        max_incoming=max_incoming,
        first_difference=_first_difference(*witness),
        reason=f"{len(terminals)} distinct terminal configurations",
        violations=unknown,
    )
