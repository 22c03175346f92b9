"""
Canonical `.caa` text for a protocol.
"""
from app.modules.automaton.models import Caa
from app.modules.semantics.models import Machine, Protocol

INDENT = "    "


def _print_machine(machine: Machine) -> list[str]:
    caa: Caa = machine.caa
    lines = [f"machine {machine.pid} {{", f"{INDENT}initial {caa.initial};"]
    finals = [s for s in caa.states if caa.is_final(s)]
    if finals:
        lines.append(f"{INDENT}final {' '.join(finals)};")
    lines.append(f"{INDENT}states {' '.join(caa.states)};")
    lines.extend(f"{INDENT}{edge};" for edge in caa.edges)
    lines.append("}")
    return lines


def print_protocol(protocol: Protocol) -> str:
    """
    Deterministic rendering; reparsing the output gives an equal protocol.

    The `states` line is always written so that isolated states and the
    state order survive the round trip.
    """
    blocks = ["\n".join(_print_machine(machine)) for machine in protocol]
    return "\n\n".join(blocks) + "\n"
