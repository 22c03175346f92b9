"""
API v1 router.
"""
from fastapi import APIRouter

from app.modules.analysis import endpoints as analysis
from app.modules.dsl import endpoints as protocols
from app.modules.semantics import endpoints as semantics


api_router = APIRouter()

# Include routers
api_router.include_router(protocols.router, prefix="/protocols")
api_router.include_router(semantics.router, prefix="/semantics")
api_router.include_router(analysis.router, prefix="/analysis")
