"""
Simulation endpoints: exhaustive exploration and seeded runs.
"""
from fastapi import APIRouter, Query

from app.core.docs import doc_responses
from app.core.schemas.response import SuccessResponse
from app.modules.dsl.service import load_protocol
from app.modules.semantics.explorer import explore, run_one
from app.modules.semantics.schemas import ExplorationDocument, ProtocolRequest, TraceDocument

router = APIRouter(tags=["Semantics"])


@router.post(
    "/explore",
    response_model=SuccessResponse[ExplorationDocument],
    summary="Explore Protocol",
    responses=doc_responses(errors=(400, 422))
)
def explore_protocol(
    request: ProtocolRequest,
    traces: bool = Query(default=False, description="Include every maximal trace")
):
    """
    Exhaustively explore a protocol's reachable configurations.

    - Reports reachable configurations, edges and maximal traces
    - `verdict` is `BoundExceeded` when a bound cut the exploration short
    """
    doc = load_protocol(request.source)
    result = explore(doc.protocol, request.bounds)
    return SuccessResponse(
        message=f"Exploration finished: {result.verdict}",
        data=ExplorationDocument.from_result(result, include_traces=traces)
    )


@router.post(
    "/run",
    response_model=SuccessResponse[TraceDocument],
    summary="Run Protocol",
    responses=doc_responses(errors=(400, 422))
)
def run_protocol(
    request: ProtocolRequest,
    seed: int = Query(default=0, description="Random seed; the same seed replays the same trace")
):
    """Random walk through the protocol, choosing uniformly among successors."""
    doc = load_protocol(request.source)
    trace = run_one(doc.protocol, seed, request.bounds)
    return SuccessResponse(
        message=f"Run finished after {len(trace.events)} steps",
        data=TraceDocument.from_trace(doc.protocol, trace)
    )
