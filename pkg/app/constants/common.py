# Common constants

DEFAULT_MAX_DEPTH = 10_000
DEFAULT_MAX_MAILBOX_LEN = 64
DEFAULT_MAX_STATES = 1_000_000
DEFAULT_MAX_TRACES = 1_000_000

# Host integer width for term arithmetic (64-bit signed)
INT_MIN = -(2**63)
INT_MAX = 2**63 - 1

PROTOCOL_FILE_SUFFIX = ".caa"
ERLANG_MODULE_PREFIX = "caa_m"

# CLI exit codes
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_UNKNOWN = 3
EXIT_RACES = 4
