"""
Bounded exhaustive exploration, seeded random runs and queries over the
resulting reachability graph.

Exploration is level-synchronous: each breadth-first level is expanded
(optionally across a thread pool) and then merged sequentially in frontier
order, so the graph, its discovery order and the trace set do not depend
on worker scheduling.
"""
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Iterable, Optional, Sequence

from app.constants.enums import BoundKind, PayloadMode
from app.core.config import settings
from app.modules.semantics.formatting import format_event, format_global_state
from app.modules.semantics.models import (
    ExplorationResult,
    GlobalState,
    Protocol,
    Successor,
    Trace,
)
from app.modules.semantics.schemas import Bounds
from app.modules.semantics.service import initial_state, step

logger = logging.getLogger(__name__)


def _mailbox_overflow(g: GlobalState, limit: int) -> bool:
    return any(len(local.mailbox) > limit for local in g.locals)


def explore(
    protocol: Protocol,
    bounds: Optional[Bounds] = None,
    jobs: Optional[int] = None,
    payloads: Optional[PayloadMode] = None
) -> ExplorationResult:
    """
    Build the reachability graph from the initial configuration and
    enumerate its maximal traces.

    Args:
        protocol: Validated protocol
        bounds: Exploration limits, settings defaults when omitted
        jobs: Worker threads for frontier expansion, settings.JOBS when omitted
        payloads: Send payload evaluation mode

    Returns:
        ExplorationResult; `bound` names the first limit that tripped

    Raises:
        StepError: the step relation refused a reachable configuration
    """
    bounds = bounds or Bounds()
    jobs = jobs or settings.JOBS or 1

    initial = initial_state(protocol)
    graph: dict[GlobalState, tuple[Successor, ...]] = {}
    truncated: dict[GlobalState, BoundKind] = {}
    discovered = {initial}
    frontier = [initial]
    level = 0

    executor = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while frontier:
            expandable: list[GlobalState] = []
            for g in frontier:
                if level >= bounds.max_depth:
                    # a configuration at the depth limit is only cut if it could still move
                    if step(protocol, g, depth=level, payloads=payloads):
                        truncated[g] = BoundKind.MAX_DEPTH
                elif _mailbox_overflow(g, bounds.max_mailbox_len):
                    truncated[g] = BoundKind.MAX_MAILBOX_LEN
                elif len(graph) + len(expandable) >= bounds.max_states:
                    truncated[g] = BoundKind.MAX_STATES
                else:
                    expandable.append(g)
                    continue
                graph[g] = ()

            expand = partial(step, protocol, depth=level, payloads=payloads)
            expansions = executor.map(expand, expandable) if executor else map(expand, expandable)

            next_frontier: list[GlobalState] = []
            for g, successors in zip(expandable, expansions):
                graph[g] = successors
                for succ in successors:
                    if succ.state not in discovered:
                        discovered.add(succ.state)
                        next_frontier.append(succ.state)

            logger.debug(
                "level %d: expanded %d, discovered %d", level, len(expandable), len(next_frontier)
            )
            frontier = next_frontier
            level += 1
    finally:
        if executor:
            executor.shutdown()

    bound = next(iter(truncated.values()), None)
    if bound is not None:
        logger.warning(
            "exploration stopped at bound %s (%d configurations cut)", bound.value, len(truncated)
        )

    traces, trace_bound = _maximal_traces(initial, graph, truncated, bounds.max_traces)
    bound = bound or trace_bound
    if trace_bound is not None and bound is trace_bound:
        logger.warning("trace enumeration stopped at bound %s", trace_bound.value)

    result = ExplorationResult(protocol, initial, graph, traces, truncated, bound)
    logger.info(
        "explored %d configurations, %d edges, %d traces: %s",
        result.reachable_states, result.edge_count, len(traces), result.verdict
    )
    return result


def _maximal_traces(
    initial: GlobalState,
    graph: dict[GlobalState, tuple[Successor, ...]],
    truncated: dict[GlobalState, BoundKind],
    max_traces: int
) -> tuple[tuple[Trace, ...], Optional[BoundKind]]:
    """
    Depth-first enumeration of every path from `initial` to a leaf.

    A path that comes back to a configuration already on it ends there,
    marked as a cycle.
    """
    traces: list[Trace] = []
    bound: Optional[BoundKind] = None

    def emit(states, events, cut: Optional[BoundKind]) -> bool:
        traces.append(Trace(tuple(states), tuple(events), cut))
        return len(traces) < max_traces

    if initial in truncated or not graph.get(initial):
        emit([initial], [], truncated.get(initial))
        return tuple(traces), None

    states = [initial]
    events = []
    on_path = {initial}
    stack = [iter(graph[initial])]
    while stack:
        succ = next(stack[-1], None)
        if succ is None:
            stack.pop()
            on_path.discard(states.pop())
            if events:
                events.pop()
            continue

        nxt = succ.state
        if nxt in on_path:
            bound = bound or BoundKind.CYCLE
            if not emit(states + [nxt], events + [succ.event], BoundKind.CYCLE):
                return tuple(traces), BoundKind.MAX_TRACES
            continue

        if nxt in truncated or not graph.get(nxt):
            if not emit(states + [nxt], events + [succ.event], truncated.get(nxt)):
                return tuple(traces), BoundKind.MAX_TRACES
            continue

        states.append(nxt)
        events.append(succ.event)
        on_path.add(nxt)
        stack.append(iter(graph[nxt]))

    return tuple(traces), bound


def run_one(
    protocol: Protocol,
    seed: int,
    bounds: Optional[Bounds] = None,
    payloads: Optional[PayloadMode] = None
) -> Trace:
    """Random walk choosing uniformly among successors; same seed, same trace."""
    bounds = bounds or Bounds()
    rng = random.Random(seed)
    g = initial_state(protocol)
    states = [g]
    events = []
    while True:
        if _mailbox_overflow(g, bounds.max_mailbox_len):
            return Trace(tuple(states), tuple(events), BoundKind.MAX_MAILBOX_LEN)
        successors = step(protocol, g, depth=len(states) - 1, payloads=payloads)
        if not successors:
            return Trace(tuple(states), tuple(events))
        if len(states) - 1 >= bounds.max_depth:
            return Trace(tuple(states), tuple(events), BoundKind.MAX_DEPTH)
        chosen = rng.choice(successors)
        g = chosen.state
        states.append(g)
        events.append(chosen.event)


def find_trace(result: ExplorationResult, states: Sequence[GlobalState]) -> Optional[Trace]:
    """The explored trace visiting exactly `states`, if any."""
    wanted = tuple(states)
    for trace in result.traces:
        if trace.states == wanted:
            return trace
    return None


def terminal_states(
    result: ExplorationResult, traces: Optional[Iterable[Trace]] = None
) -> list[GlobalState]:
    """Distinct end configurations of maximal traces, in trace order."""
    seen: dict[GlobalState, None] = {}
    for trace in traces if traces is not None else result.traces:
        if trace.is_maximal:
            seen.setdefault(trace.terminal, None)
    return list(seen)


def to_dot(result: ExplorationResult) -> str:
    """Graphviz rendering of the reachability graph."""
    ids = {g: n for n, g in enumerate(result.graph)}

    def quote(text: str) -> str:
        return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = ["digraph reachability {", "  node [shape=box, fontname=monospace];"]
    for g, n in ids.items():
        attrs = [f"label={quote(format_global_state(g))}"]
        if g == result.initial:
            attrs.append("penwidth=2")
        if g in result.truncated:
            attrs.append("style=dashed")
        elif result.is_terminal(g):
            attrs.append("peripheries=2")
        lines.append(f"  n{n} [{', '.join(attrs)}];")
    for g, successors in result.graph.items():
        for succ in successors:
            label = quote(format_event(succ.event))
            lines.append(f"  n{ids[g]} -> n{ids[succ.state]} [label={label}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
