"""
Protocol document schemas.
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from app.modules.automaton.models import ValidationIssue


class IssueDocument(BaseModel):
    code: str
    severity: str
    message: str
    machine: Optional[str] = None
    state: Optional[str] = None
    location: Optional[str] = Field(None, description="line:column in the source")

    @classmethod
    def from_issue(cls, issue: ValidationIssue) -> "IssueDocument":
        return cls(
            code=issue.code.value,
            severity=issue.severity.value,
            message=issue.message,
            machine=str(issue.machine) if issue.machine is not None else None,
            state=issue.state,
            location=str(issue.span) if issue.span else None,
        )


class ValidationDocument(BaseModel):
    valid: bool
    machines: int
    issues: List[IssueDocument]


class PrintDocument(BaseModel):
    text: str


class CodegenDocument(BaseModel):
    modules: Dict[str, str] = Field(..., description="Erlang source keyed by module name")
