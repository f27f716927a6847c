"""
Error Taxonomy for the Counting Engine

Every failure the package raises derives from CountingError and carries an
ErrorCategory. The CLI maps categories to process exit codes through
EXIT_CODES, so scripts can tell a parse problem from a resource cap or a
failed identity check.
"""

from enum import Enum
from typing import Dict, Optional


class ErrorCategory(Enum):
    """High-level categories of failures"""
    IDENTITY_FAILURE = "identity_failure"
    USAGE = "usage"
    PARSE = "parse"
    RESOURCE_CAP = "resource_cap"


EXIT_CODES: Dict[ErrorCategory, int] = {
    ErrorCategory.IDENTITY_FAILURE: 1,
    ErrorCategory.USAGE: 2,
    ErrorCategory.PARSE: 2,
    ErrorCategory.RESOURCE_CAP: 3,
}


def exit_code_for(category: ErrorCategory) -> int:
    """Process exit code for an error category."""
    return EXIT_CODES[category]


class CountingError(Exception):
    """Base class for every error raised by the package."""

    category: ErrorCategory = ErrorCategory.USAGE

    @property
    def exit_code(self) -> int:
        return exit_code_for(self.category)


# ============================================================================
# PARSE ERRORS
# ============================================================================

class ParseError(CountingError):
    """A text document does not follow its file format."""

    category = ErrorCategory.PARSE

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class MalformedHeaderError(ParseError):
    pass


class MalformedLineError(ParseError):
    pass


class VertexOutOfRangeError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class SelfLoopError(ParseError):
    pass


class EdgeCountMismatchError(ParseError):
    pass


# ============================================================================
# USAGE ERRORS
# ============================================================================

class GraphError(CountingError):
    """A vertex or vertex set does not belong to the graph."""


class ColoringError(CountingError):
    """A coloring is incomplete, inconsistent, or not colorful where required."""


class PatternError(CountingError):
    """Labelled patterns of different sizes, or a malformed pattern."""


class PropertyError(CountingError):
    """A property cannot be used the way it was requested."""


class NonMonotonePropertyError(PropertyError):
    pass


class NonSymmetricPropertyError(PropertyError):
    pass


class InstanceError(CountingError):
    """The instance violates a precondition such as k ≤ n."""


class HashFamilyError(CountingError):
    pass


class InvalidDecompositionError(CountingError):
    pass


class NoWitnessError(CountingError):
    """Sampling was requested from an empty witness set."""


class NonEnumerableSystemError(CountingError):
    """A set system cannot list its elements."""


class OracleInconsistencyError(CountingError):
    """A sampled element failed its own set's membership test."""

    category = ErrorCategory.IDENTITY_FAILURE


class InternalError(CountingError):
    category = ErrorCategory.IDENTITY_FAILURE


class IdentityFailure(CountingError):
    category = ErrorCategory.IDENTITY_FAILURE


# ============================================================================
# RESOURCE CAPS
# ============================================================================

class ResourceCapError(CountingError):
    """An exhaustive computation would exceed its configured cap."""

    category = ErrorCategory.RESOURCE_CAP

    def __init__(self, what: str, value: int, cap: int, setting: Optional[str] = None):
        self.what = what
        self.value = value
        self.cap = cap
        hint = f" (raise {setting} to allow it)" if setting else ""
        super().__init__(f"{what} = {value} exceeds cap {cap}{hint}")
