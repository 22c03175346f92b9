"""
Analysis endpoints: races, compatibility tiers and binary convergence.
"""
from fastapi import APIRouter

from app.core.docs import doc_responses
from app.core.schemas.response import SuccessResponse
from app.modules.analysis.compatibility import classify
from app.modules.analysis.convergence import check_convergence
from app.modules.analysis.schemas import (
    ConvergenceDocument,
    RaceDocument,
    RacesDocument,
    VerdictDocument,
)
from app.modules.analysis.service import detect_races
from app.modules.dsl.service import load_protocol
from app.modules.semantics.explorer import explore
from app.modules.semantics.schemas import ProtocolRequest

router = APIRouter(tags=["Analysis"])


@router.post(
    "/races",
    response_model=SuccessResponse[RacesDocument],
    summary="Detect Races",
    responses=doc_responses(errors=(400, 409, 422))
)
def detect_protocol_races(request: ProtocolRequest):
    """
    Report receive states where two or more messages of one incoming group
    could be consumed first.

    - Needs a complete exploration, otherwise 409
    """
    doc = load_protocol(request.source)
    result = explore(doc.protocol, request.bounds)
    reports = detect_races(result)
    return SuccessResponse(
        message=f"{len(reports)} races found" if reports else "No races",
        data=RacesDocument(
            race_free=not reports,
            traces_checked=len(result.traces),
            races=[RaceDocument.from_report(doc.protocol, r) for r in reports],
        )
    )


@router.post(
    "/classify",
    response_model=SuccessResponse[VerdictDocument],
    summary="Classify Protocol",
    responses=doc_responses(errors=(400, 422))
)
def classify_protocol(request: ProtocolRequest):
    """Compatibility tier of the protocol's terminal configurations; Unknown when bounded."""
    doc = load_protocol(request.source)
    verdict = classify(explore(doc.protocol, request.bounds))
    return SuccessResponse(
        message=f"Protocol is {verdict.tier.value}", data=VerdictDocument.from_verdict(verdict)
    )


@router.post(
    "/convergence",
    response_model=SuccessResponse[ConvergenceDocument],
    summary="Check Convergence",
    responses=doc_responses(errors=(400, 409, 422))
)
def check_protocol_convergence(request: ProtocolRequest):
    """
    Whether every run of a binary protocol ends in the same configuration.

    - 409 when the protocol is outside the binary class
    """
    doc = load_protocol(request.source)
    result = check_convergence(doc.protocol, request.bounds)
    return SuccessResponse(
        message=f"Convergence: {result.outcome.value}",
        data=ConvergenceDocument.from_result(doc.protocol, result)
    )
