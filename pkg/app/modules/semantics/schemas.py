"""
Semantics schemas: exploration bounds, request bodies and the structured
trace and exploration documents.
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from app.core.config import settings
from app.modules.semantics.models import (
    ExplorationResult,
    GlobalState,
    Protocol,
    Sent,
    StepEvent,
    Trace,
)


class Bounds(BaseModel):
    """Exploration limits; defaults come from settings."""
    max_depth: int = Field(default_factory=lambda: settings.MAX_DEPTH, gt=0)
    max_mailbox_len: int = Field(default_factory=lambda: settings.MAX_MAILBOX_LEN, gt=0)
    max_states: int = Field(default_factory=lambda: settings.MAX_STATES, gt=0)
    max_traces: int = Field(default_factory=lambda: settings.MAX_TRACES, gt=0)

    model_config = {"frozen": True}


class ProtocolRequest(BaseModel):
    """Request body shared by every protocol route."""
    source: str = Field(..., description="Protocol text in .caa syntax")
    bounds: Optional[Bounds] = None

    model_config = {
        "json_schema_extra": {
            "example": {
                "source": "machine #1 { initial p0; final p1; p0 -- #2!ping -> p1; }\n"
                          "machine #2 { initial q0; final q1; q0 -- ?ping -> q1; }",
                "bounds": {"max_depth": 100}
            }
        }
    }


class LocalStateDocument(BaseModel):
    machine: str
    state: str
    mailbox: List[str]
    env: Dict[str, str]


class EventDocument(BaseModel):
    kind: str = Field(..., description="'send' or 'receive'")
    machine: str
    peer: Optional[str] = Field(None, description="Receiver of a send")
    value: str
    pattern: Optional[str] = None
    mailbox_position: Optional[int] = None

    @classmethod
    def from_event(cls, event: StepEvent) -> "EventDocument":
        if isinstance(event, Sent):
            return cls(
                kind="send",
                machine=str(event.sender),
                peer=str(event.target),
                value=str(event.value),
            )
        return cls(
            kind="receive",
            machine=str(event.by),
            value=str(event.value),
            pattern=str(event.pattern),
            mailbox_position=event.mailbox_position,
        )


def global_state_document(protocol: Protocol, g: GlobalState) -> List[LocalStateDocument]:
    return [
        LocalStateDocument(
            machine=str(machine.pid),
            state=local.state,
            mailbox=[str(m) for m in local.mailbox],
            env={name: str(value) for name, value in local.env.items()},
        )
        for machine, local in zip(protocol.machines, g.locals)
    ]


class TraceDocument(BaseModel):
    index: int
    truncated: Optional[str] = None
    states: List[List[LocalStateDocument]]
    events: List[EventDocument]

    @classmethod
    def from_trace(cls, protocol: Protocol, trace: Trace, index: int = 0) -> "TraceDocument":
        return cls(
            index=index,
            truncated=trace.truncated.value if trace.truncated else None,
            states=[global_state_document(protocol, g) for g in trace.states],
            events=[EventDocument.from_event(e) for e in trace.events],
        )


class ExplorationDocument(BaseModel):
    verdict: str
    bound: Optional[str] = None
    reachable_states: int
    edges: int
    maximal_traces: int
    traces: List[TraceDocument] = Field(default_factory=list)

    @classmethod
    def from_result(
        cls, result: ExplorationResult, include_traces: bool = True
    ) -> "ExplorationDocument":
        return cls(
            verdict="Complete" if result.complete else "BoundExceeded",
            bound=result.bound.value if result.bound else None,
            reachable_states=result.reachable_states,
            edges=result.edge_count,
            maximal_traces=sum(1 for t in result.traces if t.is_maximal),
            traces=[
                TraceDocument.from_trace(result.protocol, trace, index)
                for index, trace in enumerate(result.traces)
            ] if include_traces else [],
        )
