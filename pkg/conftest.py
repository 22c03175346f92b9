import os
from pathlib import Path

# Quiet, uncoloured logs under test
os.environ.setdefault("CAA_LOG_LEVEL", "WARNING")
os.environ.setdefault("CAA_COLOR", "false")

import pytest
from httpx import AsyncClient, ASGITransport
from hypothesis import HealthCheck, settings as hypothesis_settings

from app.main import app as main_app
from app.modules.dsl.service import read_protocol
from app.modules.semantics.models import Protocol

PROTOCOLS_DIR = Path(__file__).parent / "protocols"

hypothesis_settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
hypothesis_settings.register_profile(
    "ci", parent=hypothesis_settings.get_profile("default"), derandomize=True
)
hypothesis_settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def protocols_dir() -> Path:
    """Directory of the shipped example protocols."""
    return PROTOCOLS_DIR


@pytest.fixture
def load_example():
    """Load a shipped example protocol by name, e.g. `load_example("mem4")`."""

    def _load(name: str) -> Protocol:
        return read_protocol(PROTOCOLS_DIR / f"{name}.caa").protocol

    return _load


@pytest.fixture
def example_source():
    """Raw text of a shipped example protocol."""

    def _source(name: str) -> str:
        return (PROTOCOLS_DIR / f"{name}.caa").read_text(encoding="utf-8")

    return _source


@pytest.fixture
async def client() -> AsyncClient:
    """HTTP client bound to the application, no network involved."""
    transport = ASGITransport(app=main_app)
    async with AsyncClient(transport=transport, base_url="http://test") as c:
        yield c
