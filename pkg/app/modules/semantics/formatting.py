"""
Line-oriented text rendering of configurations and traces.

One global state per line, locals as `(state, [msgs], {env})`. Locals that
changed since the previous line are prefixed with `*`.
"""
from typing import Optional

from app.modules.semantics.models import GlobalState, LocalState, StepEvent, Trace


def format_local_state(local: LocalState) -> str:
    mailbox = ", ".join(str(m) for m in local.mailbox)
    return f"({local.state}, [{mailbox}], {local.env})"


def changed_locals(before: Optional[GlobalState], after: GlobalState) -> set[int]:
    if before is None:
        return set()
    return {i for i, (a, b) in enumerate(zip(before.locals, after.locals)) if a != b}


def format_global_state(g: GlobalState, marked: frozenset[int] | set[int] = frozenset()) -> str:
    parts = [("*" if i in marked else "") + format_local_state(local) for i, local in enumerate(g)]
    return "<" + ", ".join(parts) + ">"


def format_event(event: StepEvent) -> str:
    return str(event)


def format_trace(trace: Trace, title: Optional[str] = None, mark_changes: bool = True) -> str:
    lines = []
    if title:
        lines.append(title)
    previous: Optional[GlobalState] = None
    width = len(str(len(trace.states) - 1))
    for position, g in enumerate(trace.states):
        marked = changed_locals(previous, g) if mark_changes else set()
        line = f"{position:>{width}}  {format_global_state(g, marked)}"
        if position > 0:
            line += f"  % {format_event(trace.events[position - 1])}"
        lines.append(line)
        previous = g
    if trace.truncated is not None:
        lines.append(f"... truncated ({trace.truncated.value})")
    return "\n".join(lines)
