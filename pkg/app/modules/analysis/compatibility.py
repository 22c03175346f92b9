"""
Compatibility tiers of a fully explored protocol.
"""
from app.constants.enums import Tier
from app.modules.analysis.models import TierVerdict
from app.modules.semantics.explorer import terminal_states
from app.modules.semantics.formatting import format_global_state
from app.modules.semantics.models import ExplorationResult, GlobalState


def classify(result: ExplorationResult) -> TierVerdict:
    """
    The first tier whose condition holds at every terminal configuration:

    - StronglyCompatible: all mailboxes empty and every machine final
    - WeaklyCompatible: every machine final
    - CommunicationLacking: all mailboxes empty and no machine final
    - Incompatible otherwise

    An exploration cut by a bound is Unknown.
    """
    if not result.complete:
        return TierVerdict(Tier.UNKNOWN, f"exploration stopped at bound {result.bound.value}")

    machines = result.protocol.machines

    def empty(g: GlobalState) -> bool:
        return all(not local.mailbox for local in g.locals)

    def finals(g: GlobalState) -> list[bool]:
        return [m.caa.is_final(local.state) for m, local in zip(machines, g.locals)]

    terminals = terminal_states(result)
    tiers = (
        (Tier.STRONGLY_COMPATIBLE, lambda g: empty(g) and all(finals(g))),
        (Tier.WEAKLY_COMPATIBLE, lambda g: all(finals(g))),
        (Tier.COMMUNICATION_LACKING, lambda g: empty(g) and not any(finals(g))),
    )
    counterexample = None
    for tier, holds in tiers:
        failing = next((g for g in terminals if not holds(g)), None)
        if failing is None:
            return TierVerdict(tier, f"holds at all {len(terminals)} terminal configurations")
        counterexample = counterexample or failing
    return TierVerdict(Tier.INCOMPATIBLE, f"no tier holds at {format_global_state(counterexample)}")
