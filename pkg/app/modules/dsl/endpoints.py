"""
Protocol document endpoints: validation, canonical printing and Erlang
code generation.
"""
from fastapi import APIRouter

from app.core.docs import doc_responses
from app.core.schemas.response import SuccessResponse
from app.modules.dsl.erlang import emit_erlang
from app.modules.dsl.parser import parse_protocol
from app.modules.dsl.printer import print_protocol
from app.modules.dsl.schemas import (
    CodegenDocument,
    IssueDocument,
    PrintDocument,
    ValidationDocument,
)
from app.modules.dsl.service import load_protocol
from app.modules.semantics.schemas import ProtocolRequest

router = APIRouter(tags=["Protocols"])


@router.post(
    "/validate",
    response_model=SuccessResponse[ValidationDocument],
    summary="Validate Protocol",
    responses=doc_responses(errors=(400,))
)
async def validate_protocol_text(request: ProtocolRequest):
    """
    Parse a protocol and list its well-formedness issues.

    - Syntax errors answer 400
    - Validation issues are data: `valid` is false when any is an error
    """
    doc = parse_protocol(request.source)
    return SuccessResponse(
        message="Protocol is well-formed" if not doc.errors else "Protocol has validation errors",
        data=ValidationDocument(
            valid=not doc.errors,
            machines=doc.protocol.arity,
            issues=[IssueDocument.from_issue(issue) for issue in doc.issues],
        )
    )


@router.post(
    "/print",
    response_model=SuccessResponse[PrintDocument],
    summary="Print Protocol",
    responses=doc_responses(errors=(400, 422))
)
async def print_protocol_text(request: ProtocolRequest):
    """Canonical formatting of a well-formed protocol."""
    doc = load_protocol(request.source)
    return SuccessResponse(
        message="Protocol printed", data=PrintDocument(text=print_protocol(doc.protocol))
    )


@router.post(
    "/codegen",
    response_model=SuccessResponse[CodegenDocument],
    summary="Generate Erlang",
    responses=doc_responses(errors=(400, 422))
)
async def generate_erlang(request: ProtocolRequest):
    """One Erlang skeleton module per machine."""
    doc = load_protocol(request.source)
    modules = emit_erlang(doc.protocol)
    return SuccessResponse(
        message=f"Generated {len(modules)} modules", data=CodegenDocument(modules=modules)
    )
