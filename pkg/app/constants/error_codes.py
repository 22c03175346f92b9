"""
Error code constants for standardized error responses.
"""


class ErrorCode:
    """Standardized error codes for CLI diagnostics and API responses."""

    # Protocol text errors (PARSE_xxx)
    SYNTAX_ERROR = "PARSE_001"
    DUPLICATE_MACHINE = "PARSE_002"
    PATTERN_ARITHMETIC = "PARSE_003"
    INT_OUT_OF_RANGE = "PARSE_004"

    # Validation errors (VAL_xxx)
    VALIDATION_ERROR = "VAL_001"
    FIELD_INVALID = "VAL_002"

    # Term evaluation errors (TERM_xxx)
    EVAL_OPEN_TERM = "TERM_001"
    EVAL_NOT_INTEGER = "TERM_002"
    EVAL_OVERFLOW = "TERM_003"

    # Automaton errors (AUT_xxx)
    UNKNOWN_STATE = "AUT_001"
    MALFORMED_AUTOMATON = "AUT_002"

    # Step relation errors (STEP_xxx)
    SELF_MESSAGE = "STEP_001"
    UNKNOWN_TARGET = "STEP_002"
    PAYLOAD_EVAL = "STEP_003"

    # Analysis errors (ANA_xxx)
    REQUIRES_COMPLETE_EXPLORATION = "ANA_001"
    CONVERGENCE_PRECONDITION = "ANA_002"

    # Server errors (SRV_xxx)
    INTERNAL_ERROR = "SRV_001"
