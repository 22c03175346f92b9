"""
Loading protocol documents from text and files.
"""
import logging
from pathlib import Path
from typing import Union

from app.core.exceptions import ProtocolValidationError
from app.modules.dsl.models import ProtocolDoc
from app.modules.dsl.parser import parse_protocol

logger = logging.getLogger(__name__)


def load_protocol(source: str, strict: bool = False) -> ProtocolDoc:
    """
    Parse and validate protocol text.

    Args:
        source: Protocol text
        strict: Treat validation warnings as errors

    Returns:
        ProtocolDoc whose protocol is safe to run

    Raises:
        ProtocolSyntaxError: the text does not parse
        ProtocolValidationError: the protocol is not well-formed
    """
    doc = parse_protocol(source)
    blocking = list(doc.issues) if strict else doc.errors
    if blocking:
        raise ProtocolValidationError(blocking)
    for warning in doc.warnings:
        logger.warning("%s", warning)
    return doc


def read_protocol(path: Union[str, Path], strict: bool = False) -> ProtocolDoc:
    return load_protocol(Path(path).read_text(encoding="utf-8"), strict=strict)
