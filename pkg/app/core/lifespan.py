"""
FastAPI lifespan event handler.
"""
import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI

from app.core.config import settings
from app.core.log import configure_logging

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    Lifespan event handler for FastAPI application.
    Handles startup and shutdown events.
    """
    configure_logging()
    logger.info("%s starting up (exploration workers: %s)", settings.PROJECT_NAME, settings.JOBS)

    yield

    logger.info("%s shutting down", settings.PROJECT_NAME)
