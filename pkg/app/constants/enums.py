"""
Enums for the application.
"""
from enum import Enum


class Severity(str, Enum):
    """Validation issue severity."""
    ERROR = "error"
    WARNING = "warning"


class IssueCode(str, Enum):
    """Well-formedness problems reported by automaton and protocol validation."""
    MIXED_STATE = "MixedState"
    NON_AFFINE_SEND = "NonAffineSend"
    UNREACHABLE_STATE = "UnreachableState"
    FINAL_WITH_SEND = "FinalStateWithSend"
    NON_LINEAR_PATTERN = "NonLinearPattern"
    DUPLICATE_PATTERN = "DuplicatePattern"
    SELF_SEND = "SelfSend"
    UNKNOWN_PID = "UnknownPid"


class StateKind(str, Enum):
    """What a control state can do next."""
    SEND = "SendKind"
    RECEIVE = "ReceiveKind"
    TERMINAL = "TerminalKind"


class BoundKind(str, Enum):
    """Exploration limits that can cut a run short."""
    MAX_DEPTH = "max_depth"
    MAX_MAILBOX_LEN = "max_mailbox_len"
    MAX_STATES = "max_states"
    MAX_TRACES = "max_traces"
    CYCLE = "cycle"


class PayloadMode(str, Enum):
    """How SEND payloads with unbound variables are evaluated."""
    SYMBOLIC = "symbolic"
    STRICT = "strict"


class StepErrorKind(str, Enum):
    """Reasons the step relation refuses a configuration."""
    SELF_MESSAGE = "SelfMessage"
    UNKNOWN_TARGET = "UnknownTarget"
    EVAL = "Eval"


class Tier(str, Enum):
    """Compatibility tiers, checked in declaration order."""
    STRONGLY_COMPATIBLE = "StronglyCompatible"
    WEAKLY_COMPATIBLE = "WeaklyCompatible"
    COMMUNICATION_LACKING = "CommunicationLacking"
    INCOMPATIBLE = "Incompatible"
    UNKNOWN = "Unknown"


class ConvergenceOutcome(str, Enum):
    """Result of checking the binary convergence property."""
    CONVERGES = "Converges"
    DIVERGES = "Diverges"
    UNKNOWN = "Unknown"


class OutputFormat(str, Enum):
    """CLI output formats."""
    TEXT = "text"
    JSON = "json"
