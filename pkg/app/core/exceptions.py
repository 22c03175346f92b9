"""
Custom exception classes with standardized error payloads.

Every exception carries an application error code, an HTTP status for the
API surface and an exit code for the CLI.
"""
from typing import Any, Dict, List, Optional

from fastapi import status

from app.constants.common import EXIT_PARSE, EXIT_UNKNOWN, EXIT_VALIDATION
from app.constants.enums import StepErrorKind
from app.constants.error_codes import ErrorCode


class AppException(Exception):
    """Base application exception with standardized error format."""

    status_code: int = status.HTTP_400_BAD_REQUEST
    exit_code: int = EXIT_VALIDATION

    def __init__(
        self,
        error_code: str,
        message: str,
        field: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        """
        Initialize exception.

        Args:
            error_code: Application error code
            message: Error message
            field: Offending field or source location, if any
            details: Additional error context
        """
        self.error_code = error_code
        self.message = message
        self.field = field
        self.details = details
        super().__init__(message)

    @property
    def detail(self) -> Dict[str, Any]:
        return {
            "success": False,
            "error": {
                "code": self.error_code,
                "message": self.message,
                "field": self.field
            },
            "details": self.details
        }


class ProtocolSyntaxError(AppException):
    """Protocol text could not be parsed (exit 2)."""

    exit_code = EXIT_PARSE

    def __init__(self, errors: List[Any]):
        self.errors = list(errors)
        first = self.errors[0]
        super().__init__(
            error_code=first.code,
            message=str(first),
            field=str(first.span) if first.span else None,
            details={"errors": [
                {"code": e.code, "message": e.message, "span": str(e.span) if e.span else None}
                for e in self.errors
            ]}
        )


class ProtocolValidationError(AppException):
    """Protocol parsed but is not well-formed (exit 1)."""

    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY

    def __init__(self, issues: List[Any]):
        self.issues = list(issues)
        super().__init__(
            error_code=ErrorCode.VALIDATION_ERROR,
            message="; ".join(str(issue) for issue in self.issues) or "Protocol is not well-formed",
            details={"issues": [issue.code.value for issue in self.issues]}
        )


class EvalError(AppException):
    """A term could not be reduced to a value."""

    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY

    def __init__(self, error_code: str, message: str, term: Optional[str] = None):
        self.term = term
        super().__init__(
            error_code=error_code,
            message=message,
            details={"term": term} if term else None
        )


class UnknownStateError(AppException):
    """A control state is not part of the automaton."""

    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY

    def __init__(self, state: str):
        self.state = state
        super().__init__(
            error_code=ErrorCode.UNKNOWN_STATE,
            message=f"Unknown control state '{state}'",
            field=state
        )


class MalformedAutomatonError(AppException):
    """An automaton violates a structural invariant."""

    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY

    def __init__(self, message: str, state: Optional[str] = None):
        super().__init__(
            error_code=ErrorCode.MALFORMED_AUTOMATON,
            message=message,
            field=state
        )


class StepError(AppException):
    """The step relation hit a configuration it refuses to interpret."""

    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY

    _codes = {
        StepErrorKind.SELF_MESSAGE: ErrorCode.SELF_MESSAGE,
        StepErrorKind.UNKNOWN_TARGET: ErrorCode.UNKNOWN_TARGET,
        StepErrorKind.EVAL: ErrorCode.PAYLOAD_EVAL,
    }

    def __init__(
        self,
        kind: StepErrorKind,
        machine: str,
        state: str,
        label: str,
        reason: str
    ):
        self.kind = kind
        self.machine = machine
        self.state = state
        self.label = label
        super().__init__(
            error_code=self._codes[kind],
            message=f"{kind.value} at machine {machine}, state {state}, label {label}: {reason}",
            details={"kind": kind.value, "machine": machine, "state": state, "label": label}
        )


class RequiresCompleteExploration(AppException):
    """An analysis was asked to judge a bounded (incomplete) exploration."""

    status_code = status.HTTP_409_CONFLICT
    exit_code = EXIT_UNKNOWN

    def __init__(self, bound: Optional[str] = None):
        super().__init__(
            error_code=ErrorCode.REQUIRES_COMPLETE_EXPLORATION,
            message=(
                f"Exploration stopped at bound '{bound}'; "
                "analysis needs a complete state space"
            ),
            details={"bound": bound}
        )


class ConvergencePreconditionError(AppException):
    """The protocol is outside the binary convergence class."""

    status_code = status.HTTP_409_CONFLICT

    def __init__(self, violations: List[Any]):
        self.violations = list(violations)
        super().__init__(
            error_code=ErrorCode.CONVERGENCE_PRECONDITION,
            message="; ".join(str(v) for v in self.violations),
            details={"violations": [v.kind for v in self.violations]}
        )


def add_exception_handlers(app):
    """
    Add custom exception handlers to FastAPI app.

    Args:
        app: FastAPI application instance
    """
    import logging

    from fastapi import Request
    from fastapi.exceptions import RequestValidationError
    from fastapi.responses import JSONResponse

    logger = logging.getLogger(__name__)

    @app.exception_handler(AppException)
    async def app_exception_handler(request: Request, exc: AppException):
        """Handle application exceptions."""
        return JSONResponse(status_code=exc.status_code, content=exc.detail)

    @app.exception_handler(RequestValidationError)
    async def validation_exception_handler(request: Request, exc: RequestValidationError):
        """Handle request validation errors."""
        errors = []
        for error in exc.errors():
            loc = error["loc"]
            field = ".".join(str(part) for part in loc[1:]) if len(loc) > 1 else None
            errors.append({
                "code": ErrorCode.FIELD_INVALID,
                "message": error["msg"],
                "field": field
            })

        return JSONResponse(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            content={
                "success": False,
                "error": {
                    "code": ErrorCode.VALIDATION_ERROR,
                    "message": "Request validation failed",
                    "field": None
                },
                "errors": errors
            }
        )

    @app.exception_handler(Exception)
    async def global_exception_handler(request: Request, exc: Exception):
        """Handle unexpected exceptions."""
        logger.exception("Unexpected error: %s", exc)

        return JSONResponse(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            content={
                "success": False,
                "error": {
                    "code": ErrorCode.INTERNAL_ERROR,
                    "message": "An unexpected error occurred",
                    "field": None
                },
                "details": {"error": str(exc)} if app.debug else None
            }
        )
