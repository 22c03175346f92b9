"""
Logging setup shared by the CLI and the API.
"""
import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from app.core.config import settings


def configure_logging(level: Optional[str] = None, color: Optional[bool] = None) -> None:
    """
    Route the root logger through rich.

    Args:
        level: Log level name; defaults to settings.LOG_LEVEL
        color: Colour output; defaults to settings.COLOR
    """
    use_color = settings.COLOR if color is None else color
    handler = RichHandler(
        console=Console(stderr=True, no_color=not use_color),
        show_path=False,
        rich_tracebacks=settings.DEBUG,
    )
    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        format="%(name)s: %(message)s",
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )
