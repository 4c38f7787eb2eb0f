"""Shared error type and error codes.

Validation functions return lists of ``(code, message)`` pairs; constructive
operations raise :class:`ForceLabError` carrying a single code.
"""

# skeleton / tree validation
NON_MONOTONE_F = "NON_MONOTONE_F"
BAD_LEVEL_ORDER = "BAD_LEVEL_ORDER"
F_TOO_SMALL = "F_TOO_SMALL"
MISSING_PREDECESSOR = "MISSING_PREDECESSOR"
AMBIGUOUS_PREDECESSOR = "AMBIGUOUS_PREDECESSOR"
LIMIT_SPLIT = "LIMIT_SPLIT"
INDEX_OUT_OF_RANGE = "INDEX_OUT_OF_RANGE"

# conditions
NONEMPTY_LIMIT_LABEL = "NONEMPTY_LIMIT_LABEL"
CAP_EXCEEDED = "CAP_EXCEEDED"
INCOMPATIBLE = "INCOMPATIBLE"
NON_RECTANGULAR = "NON_RECTANGULAR"
FREE_CELLS = "FREE_CELLS"
NOT_AN_EXTENSION = "NOT_AN_EXTENSION"
STRUCTURE_MISMATCH = "STRUCTURE_MISMATCH"
NO_WITNESS = "NO_WITNESS"

# automorphisms
NOT_IN_DOMAIN = "NOT_IN_DOMAIN"
BLOCK_EXHAUSTED = "BLOCK_EXHAUSTED"
OVERLAP = "OVERLAP"

# quotient layer
NOT_TILDE = "NOT_TILDE"
NOT_BELOW_RBAR = "NOT_BELOW_RBAR"
POOL_EXHAUSTED = "POOL_EXHAUSTED"
NOT_COMPARABLE = "NOT_COMPARABLE"
DOMAIN_MISMATCH = "DOMAIN_MISMATCH"

# harness
CONFIG_ERROR = "CONFIG_ERROR"
PARSE_ERROR = "PARSE_ERROR"


class ForceLabError(Exception):
    """Error with a machine-readable code and optional structured detail."""

    def __init__(self, code, message="", **detail):
        super().__init__(f"{code}: {message}" if message else code)
        self.code = code
        self.detail = detail
