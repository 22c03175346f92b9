"""
Constants package.
"""
from app.constants.enums import (
    BoundKind,
    ConvergenceOutcome,
    IssueCode,
    OutputFormat,
    PayloadMode,
    Severity,
    StateKind,
    StepErrorKind,
    Tier,
)
from app.constants.error_codes import ErrorCode

__all__ = [
    "BoundKind",
    "ConvergenceOutcome",
    "ErrorCode",
    "IssueCode",
    "OutputFormat",
    "PayloadMode",
    "Severity",
    "StateKind",
    "StepErrorKind",
    "Tier",
]
