"""
Parsed protocol documents and their diagnostics.
"""
from dataclasses import dataclass, field
from typing import Optional

from app.modules.automaton.models import Span, ValidationIssue
from app.modules.semantics.models import Protocol
from app.modules.terms.models import Pid


@dataclass(frozen=True, slots=True)
class ParseError:
    code: str
    message: str
    span: Span

    def __str__(self) -> str:
        return f"{self.span}: {self.message}"


@dataclass
class SourceMap:
    """Where machines, states and transitions were written."""
    machines: dict[Pid, Span] = field(default_factory=dict)
    states: dict[tuple[Pid, str], Span] = field(default_factory=dict)
    edges: dict[tuple[Pid, int], Span] = field(default_factory=dict)

    def locate(self, machine: Optional[Pid], state: Optional[str] = None) -> Optional[Span]:
        if machine is None:
            return None
        if state is not None and (machine, state) in self.states:
            return self.states[(machine, state)]
        return self.machines.get(machine)


@dataclass
class ProtocolDoc:
    source: str
    protocol: Protocol
    issues: tuple[ValidationIssue, ...] = ()
    spans: SourceMap = field(default_factory=SourceMap)

    @property
    def errors(self) -> list[ValidationIssue]:
        return [issue for issue in self.issues if issue.is_error]

    @property
    def warnings(self) -> list[ValidationIssue]:
        return [issue for issue in self.issues if not issue.is_error]
