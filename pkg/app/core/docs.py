"""
OpenAPI documentation helpers.
"""
from typing import Any, Dict, Optional

from fastapi import status

from app.constants.error_codes import ErrorCode
from app.core.schemas.response import ErrorResponse


def _error_example(description: str, code: str, message: str, field: Optional[str] = None,
                   details: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    return {
        "model": ErrorResponse,
        "description": description,
        "content": {
            "application/json": {
                "example": {
                    "success": False,
                    "error": {"code": code, "message": message, "field": field},
                    "details": details
                }
            }
        }
    }


_ERROR_EXAMPLES = {
    status.HTTP_400_BAD_REQUEST: _error_example(
        "Bad Request - protocol text does not parse",
        ErrorCode.SYNTAX_ERROR, "3:5: expected one of `--`, `}`", "3:5"
    ),
    status.HTTP_409_CONFLICT: _error_example(
        "Conflict - analysis needs a complete exploration",
        ErrorCode.REQUIRES_COMPLETE_EXPLORATION,
        "Exploration stopped at bound 'max_depth'; analysis needs a complete state space",
        details={"bound": "max_depth"}
    ),
    status.HTTP_422_UNPROCESSABLE_ENTITY: _error_example(
        "Unprocessable - protocol is not well-formed or cannot run",
        ErrorCode.VALIDATION_ERROR,
        "MixedState (machine #0, state s0): state s0 has both receive and send labels",
        details={"issues": ["MixedState"]}
    ),
    status.HTTP_500_INTERNAL_SERVER_ERROR: _error_example(
        "Internal Server Error", ErrorCode.INTERNAL_ERROR, "An unexpected error occurred"
    ),
}


def create_error_responses(*status_codes: int) -> Dict[int | str, Dict[str, Any]]:
    """
    Error response entries for OpenAPI documentation.

    Args:
        status_codes: HTTP status codes to include

    Returns:
        Dictionary of status codes to response models with examples
    """
    return {code: _ERROR_EXAMPLES[code] for code in status_codes if code in _ERROR_EXAMPLES}


def doc_responses(
    success_example: Optional[Any] = None,
    success_message: str = "Operation completed successfully",
    success_status_code: int = status.HTTP_200_OK,
    errors: tuple = ()
) -> Dict[int | str, Dict[str, Any]]:
    """
    Complete response documentation (success + errors) for an endpoint.

    A dict `success_example` overrides the example derived from the
    response model.
    """
    responses = create_error_responses(*errors)
    if isinstance(success_example, dict):
        responses[success_status_code] = {
            "description": "Successful Response",
            "content": {
                "application/json": {
                    "example": {
                        "success": True,
                        "message": success_message,
                        "data": success_example
                    }
                }
            }
        }
    return responses
