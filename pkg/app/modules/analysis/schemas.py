"""
Analysis documents.
"""
from typing import List, Optional

from pydantic import BaseModel, Field

from app.modules.analysis.models import ConvergenceResult, RaceReport, TierVerdict
from app.modules.semantics.models import Protocol
from app.modules.semantics.schemas import TraceDocument


class WitnessDocument(BaseModel):
    message: str
    pattern: str
    target: str


class RaceDocument(BaseModel):
    machine: str
    state: str
    group_index: int = Field(..., description="Trace position whose incoming group races")
    racing_messages: List[str]
    matching_messages: int
    distinct_targets: int
    witnesses: List[WitnessDocument]
    trace_index: int
    witness_traces: List[int]
    prefix: TraceDocument

    @classmethod
    def from_report(cls, protocol: Protocol, report: RaceReport) -> "RaceDocument":
        return cls(
            machine=str(report.machine),
            state=report.state,
            group_index=report.group_index,
            racing_messages=[str(m) for m in report.racing_messages],
            matching_messages=report.matching_messages,
            distinct_targets=report.distinct_targets,
            witnesses=[
                WitnessDocument(message=str(w.message), pattern=str(w.pattern), target=w.target)
                for w in report.witnesses
            ],
            trace_index=report.trace_index,
            witness_traces=report.witness_traces,
            prefix=TraceDocument.from_trace(protocol, report.trace_prefix, report.trace_index),
        )


class RacesDocument(BaseModel):
    race_free: bool
    traces_checked: int
    races: List[RaceDocument]


class VerdictDocument(BaseModel):
    tier: str
    reason: str

    @classmethod
    def from_verdict(cls, verdict: TierVerdict) -> "VerdictDocument":
        return cls(tier=verdict.tier.value, reason=verdict.reason)


class ConvergenceDocument(BaseModel):
    outcome: str
    reason: str = ""
    trace_count: int
    max_incoming: int = Field(..., description="Largest incoming group seen in the state space")
    first_difference: Optional[int] = None
    unchecked: List[str] = Field(
        default_factory=list, description="Preconditions confirmed only while exploring"
    )
    traces: List[TraceDocument] = Field(default_factory=list)

    @classmethod
    def from_result(cls, protocol: Protocol, result: ConvergenceResult) -> "ConvergenceDocument":
        return cls(
            outcome=result.outcome.value,
            reason=result.reason,
            trace_count=result.trace_count,
            max_incoming=result.max_incoming,
            first_difference=result.first_difference,
            unchecked=[str(v) for v in result.violations],
            traces=[TraceDocument.from_trace(protocol, t, n) for n, t in enumerate(result.traces)],
        )
