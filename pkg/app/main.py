from fastapi import FastAPI

from app import __version__
from app.core.config import settings
from app.core.docs import create_error_responses, doc_responses
from app.core.exceptions import add_exception_handlers
from app.core.lifespan import lifespan
from app.core.schemas.response import SuccessResponse

app = FastAPI(
    title=settings.PROJECT_NAME,
    version=__version__,
    debug=settings.DEBUG,
    openapi_url=f"{settings.API_V1_STR}/openapi.json",
    responses=create_error_responses(400, 422, 500),
    lifespan=lifespan
)

add_exception_handlers(app)


@app.get(
    "/health",
    response_model=SuccessResponse,
    summary="Health Check",
    responses=doc_responses(
        success_example={"status": "ok", "version": __version__},
        success_message="System is healthy",
        errors=()
    )
)
async def health_check():
    """Check if the API is running and healthy."""
    return SuccessResponse(
        data={"status": "ok", "version": __version__},
        message="System is healthy"
    )

# Include API routes
from app.api.v1.router import api_router  # noqa: E402
app.include_router(api_router, prefix=settings.API_V1_STR)
