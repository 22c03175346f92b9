"""
Analysis results: race reports, compatibility verdicts and convergence
outcomes.
"""
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from app.constants.enums import ConvergenceOutcome, Tier
from app.modules.semantics.models import Trace
from app.modules.terms.models import Pid, Term

# A multiset of message values.
Multiset = Counter


@dataclass(frozen=True, slots=True)
class Witness:
    """One way the racing state can consume a message of the group."""
    message: Term
    pattern: Term
    target: str


@dataclass
class RaceReport:
    machine: Pid
    state: str
    group_index: int
    racing_messages: tuple[Term, ...]
    matching_messages: int
    witnesses: tuple[Witness, ...]
    trace_index: int
    trace_prefix: Trace
    witness_traces: list[int] = field(default_factory=list)

    @property
    def distinct_targets(self) -> int:
        return len({w.target for w in self.witnesses})

    def __str__(self) -> str:
        messages = ", ".join(str(m) for m in self.racing_messages)
        return (
            f"race at machine {self.machine}, state {self.state}: group {self.group_index} "
            f"[{messages}] has {self.matching_messages} consumable messages "
            f"leading to {self.distinct_targets} distinct states"
        )


@dataclass(frozen=True, slots=True)
class TierVerdict:
    tier: Tier
    reason: str = ""

    def __str__(self) -> str:
        return self.tier.value


@dataclass(frozen=True, slots=True)
class Violation:
    """
    A convergence precondition that fails (`unknown` False) or cannot be
    decided statically and is checked while exploring (`unknown` True).
    """
    kind: str
    message: str
    machine: Optional[Pid] = None
    unknown: bool = False

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass
class ConvergenceResult:
    outcome: ConvergenceOutcome
    traces: tuple[Trace, ...] = ()
    trace_count: int = 0
    max_incoming: int = 0
    first_difference: Optional[int] = None
    reason: str = ""
    violations: tuple[Violation, ...] = ()
