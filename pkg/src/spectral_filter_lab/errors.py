"""Error handling module for Spectral Filter Lab.

This module defines custom exceptions and JSON error documents for all
library operations and CLI commands. Every error carries a machine-readable
error code and the process exit code the CLI reports for it.

Error Types:
    - ValidationError: Input validation or parsing failed
    - NotFoundError: Input file not found
    - NumericError: Numerical contract failed (eigensolver, divergence, singular solve)
    - PropertyCheckError: A theory/property check found a violation
    - InternalError: Unexpected failure

Exit Codes:
    - 0: Success
    - 1: Internal error
    - 2: Input error (validation, parse, missing file)
    - 3: Numeric failure
    - 4: Property-check failure
"""

from datetime import datetime, timezone
from typing import Any, Optional

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_PROPERTY = 4

# ============================================================================
# Custom Exception Classes
# ============================================================================


class SpectralLabError(Exception):
    """Base exception for all Spectral Filter Lab errors."""

    def __init__(
        self,
        message: str,
        error_code: str,
        exit_code: int,
        details: Optional[dict[str, Any]] = None,
        suggestions: Optional[list[str]] = None,
    ):
        """Initialize base error.

        Args:
            message: Human-readable error message
            error_code: Specific error code (e.g., "EDGE_LIST_PARSE_ERROR")
            exit_code: Process exit code reported by the CLI
            details: Structured error details (optional)
            suggestions: Recovery suggestions (optional)
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.exit_code = exit_code
        self.details = details or {}
        self.suggestions = suggestions or []


class ValidationError(SpectralLabError):
    """Input validation or parsing failed."""

    def __init__(
        self,
        message: str,
        error_code: str,
        details: Optional[dict[str, Any]] = None,
        suggestions: Optional[list[str]] = None,
    ):
        super().__init__(
            message=message,
            error_code=error_code,
            exit_code=EXIT_INPUT,
            details=details,
            suggestions=suggestions,
        )


class NotFoundError(SpectralLabError):
    """Input file not found."""

    def __init__(
        self,
        message: str,
        error_code: str,
        details: Optional[dict[str, Any]] = None,
        suggestions: Optional[list[str]] = None,
    ):
        super().__init__(
            message=message,
            error_code=error_code,
            exit_code=EXIT_INPUT,
            details=details,
            suggestions=suggestions,
        )


class NumericError(SpectralLabError):
    """Numerical contract failed."""

    def __init__(
        self,
        message: str,
        error_code: str,
        details: Optional[dict[str, Any]] = None,
        suggestions: Optional[list[str]] = None,
    ):
        super().__init__(
            message=message,
            error_code=error_code,
            exit_code=EXIT_NUMERIC,
            details=details,
            suggestions=suggestions,
        )


class PropertyCheckError(SpectralLabError):
    """A theory or property check found a violation."""

    def __init__(
        self,
        message: str,
        error_code: str,
        details: Optional[dict[str, Any]] = None,
        suggestions: Optional[list[str]] = None,
    ):
        super().__init__(
            message=message,
            error_code=error_code,
            exit_code=EXIT_PROPERTY,
            details=details,
            suggestions=suggestions,
        )


class InternalError(SpectralLabError):
    """Unexpected internal failure."""

    def __init__(
        self,
        message: str,
        error_code: str = "INTERNAL_ERROR",
        details: Optional[dict[str, Any]] = None,
        suggestions: Optional[list[str]] = None,
    ):
        super().__init__(
            message=message,
            error_code=error_code,
            exit_code=EXIT_INTERNAL,
            details=details,
            suggestions=suggestions,
        )


# ============================================================================
# Error Response Builders
# ============================================================================


def build_error_response(
    error: SpectralLabError,
    command: str,
) -> dict[str, Any]:
    """Build the JSON error document written by the CLI.

    Args:
        error: SpectralLabError instance
        command: Name of the CLI command that produced the error

    Returns:
        Error response dictionary with all required fields

    Example:
        >>> error = ValidationError(
        ...     message="Malformed edge on line 3",
        ...     error_code="EDGE_LIST_PARSE_ERROR",
        ...     details={"line": 3},
        ... )
        >>> response = build_error_response(error, "diagnose")
        >>> response["success"]
        False
        >>> response["exit_code"]
        2
    """
    error_type_map = {
        ValidationError: "validation_error",
        NotFoundError: "not_found_error",
        NumericError: "numeric_error",
        PropertyCheckError: "property_check_error",
        InternalError: "internal_error",
    }

    error_type = error_type_map.get(type(error), "internal_error")

    return {
        "success": False,
        "error_type": error_type,
        "error_code": error.error_code,
        "exit_code": error.exit_code,
        "message": error.message,
        "details": error.details,
        "suggestions": error.suggestions,
        "command": command,
        "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
    }


def build_generic_error_response(
    exception: Exception,
    command: str,
    error_code: str = "INTERNAL_ERROR",
) -> dict[str, Any]:
    """Build error response from a generic Python exception.

    Use this for unexpected exceptions that don't inherit from SpectralLabError.

    Args:
        exception: Any Python exception
        command: Name of the CLI command that produced the error
        error_code: Error code to use (default: INTERNAL_ERROR)

    Returns:
        Error response dictionary
    """
    error = InternalError(
        message=f"Unexpected error: {str(exception)}",
        error_code=error_code,
        details={
            "exception_type": type(exception).__name__,
            "exception_message": str(exception),
        },
        suggestions=[
            "Re-run with --log-level DEBUG for detailed information",
        ],
    )

    return build_error_response(error, command)


# ============================================================================
# Common Error Constructors
# ============================================================================


def file_not_found_error(path: str, kind: str) -> NotFoundError:
    """Construct INPUT_FILE_NOT_FOUND error.

    Args:
        path: Path that does not exist
        kind: What the file was expected to hold ("edge list", "features", ...)

    Returns:
        NotFoundError instance
    """
    return NotFoundError(
        message=f"{kind.capitalize()} file not found: {path}",
        error_code="INPUT_FILE_NOT_FOUND",
        details={"path": path, "kind": kind},
        suggestions=["Check the path spelling", "Paths are resolved relative to the cwd"],
    )


def edge_list_parse_error(path: str, line_number: int, line: str) -> ValidationError:
    """Construct EDGE_LIST_PARSE_ERROR error.

    Args:
        path: Edge list file path
        line_number: 1-based line number of the malformed line
        line: Raw line content

    Returns:
        ValidationError instance
    """
    return ValidationError(
        message=f"Malformed edge on line {line_number} of {path}: {line.strip()!r}",
        error_code="EDGE_LIST_PARSE_ERROR",
        details={"path": path, "line": line_number, "content": line.strip()},
        suggestions=[
            "Each non-comment line must be 'u v' with 0-indexed integers",
            "Comments start with '#'; a '# n=<count>' header fixes the node count",
        ],
    )


def node_index_error(index: int, n: int, line_number: Optional[int] = None) -> ValidationError:
    """Construct NODE_INDEX_OUT_OF_BOUNDS error.

    Args:
        index: Offending node index
        n: Declared node count
        line_number: Line where the index appeared (optional)

    Returns:
        ValidationError instance
    """
    where = f" on line {line_number}" if line_number is not None else ""
    return ValidationError(
        message=f"Node index {index}{where} is outside [0, {n})",
        error_code="NODE_INDEX_OUT_OF_BOUNDS",
        details={"index": index, "n": n, "line": line_number},
        suggestions=["Raise the '# n=' header or fix the edge"],
    )


def dimension_mismatch_error(what: str, expected: Any, got: Any) -> ValidationError:
    """Construct DIMENSION_MISMATCH error.

    Args:
        what: Name of the mismatching quantity
        expected: Expected shape or size
        got: Actual shape or size

    Returns:
        ValidationError instance
    """
    return ValidationError(
        message=f"Dimension mismatch for {what}: expected {expected}, got {got}",
        error_code="DIMENSION_MISMATCH",
        details={"what": what, "expected": str(expected), "got": str(got)},
    )


def degree_infeasible_error(requested: int, max_feasible: int) -> ValidationError:
    """Construct DEGREE_INFEASIBLE error.

    Args:
        requested: Requested polynomial degree
        max_feasible: Largest degree the discrete measure supports

    Returns:
        ValidationError instance
    """
    return ValidationError(
        message=(
            f"Degree {requested} needs {requested + 1} distinct weighted support points; "
            f"max feasible degree is {max_feasible}"
        ),
        error_code="DEGREE_INFEASIBLE",
        details={"requested": requested, "max_feasible": max_feasible},
        suggestions=[f"Use K <= {max_feasible}"],
    )


def divergence_error(epoch: int, loss: float) -> NumericError:
    """Construct TRAINING_DIVERGED error.

    Args:
        epoch: Epoch at which the loss became non-finite
        loss: Offending loss value

    Returns:
        NumericError instance
    """
    return NumericError(
        message=f"Training diverged at epoch {epoch} (loss={loss})",
        error_code="TRAINING_DIVERGED",
        details={"epoch": epoch, "loss": repr(loss)},
        suggestions=[
            "Lower the learning rates",
            "Use an orthogonal basis (Jacobi, Chebyshev) instead of Monomial",
        ],
    )


def precondition_error(condition: str, details: dict[str, Any]) -> ValidationError:
    """Construct PRECONDITION_VIOLATED error for theory solvers.

    Args:
        condition: Name of the failing condition ("multiple_eigenvalues", ...)
        details: Structured information about the violation

    Returns:
        ValidationError instance
    """
    return ValidationError(
        message=f"Precondition violated: {condition}",
        error_code="PRECONDITION_VIOLATED",
        details={"condition": condition, **details},
    )
