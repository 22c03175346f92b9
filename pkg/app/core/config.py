import os
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.constants.common import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_MAX_MAILBOX_LEN,
    DEFAULT_MAX_STATES,
    DEFAULT_MAX_TRACES,
)
from app.constants.enums import PayloadMode


class Settings(BaseSettings):
    PROJECT_NAME: str = "CAA Workbench"
    API_V1_STR: str = "/api/v1"

    # Exploration bounds (CLI flags and API bodies override these)
    MAX_DEPTH: int = Field(DEFAULT_MAX_DEPTH, gt=0)
    MAX_MAILBOX_LEN: int = Field(DEFAULT_MAX_MAILBOX_LEN, gt=0)
    MAX_STATES: int = Field(DEFAULT_MAX_STATES, gt=0)
    MAX_TRACES: int = Field(DEFAULT_MAX_TRACES, gt=0)

    # Worker threads for frontier expansion; None means one per CPU
    JOBS: Optional[int] = Field(None, validate_default=True)

    OPEN_PAYLOADS: PayloadMode = PayloadMode.SYMBOLIC

    # Output
    COLOR: bool = True
    LOG_LEVEL: str = "WARNING"

    # App
    DEBUG: bool = False

    @field_validator("JOBS", mode="before")
    @classmethod
    def default_jobs(cls, v: Optional[int]) -> int:
        if v in (None, "", 0, "0"):
            return os.cpu_count() or 1
        return v

    model_config = SettingsConfigDict(
        case_sensitive=True,
        env_prefix="CAA_",
        env_file=".env",
        extra="ignore",
    )


settings = Settings()
