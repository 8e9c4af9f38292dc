"""Error taxonomy and tracking for numerical runs."""

from enum import Enum
from typing import Dict, Any, Optional, List
from datetime import datetime


class ErrorType(Enum):
    """Standardized error types for classification"""
    # Input errors
    PARSE = "parse"
    DOMAIN = "domain"
    PRECONDITION = "precondition"

    # Numerical errors
    CONVERGENCE = "convergence"
    POLE = "pole"

    # Resource errors
    CAP_EXCEEDED = "cap_exceeded"
    IO = "io"

    # Unknown
    UNKNOWN = "unknown"


class ErrorSeverity(Enum):
    """Error severity levels"""
    CRITICAL = "critical"  # Stops the whole command
    HIGH = "high"          # Invalidates the current cell
    MEDIUM = "medium"      # Cell skipped, sweep continues
    LOW = "low"            # Warning only


class QKnotError(Exception):
    """Base class of every error raised by the library."""

    error_type = ErrorType.UNKNOWN

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details


class ParseError(QKnotError, ValueError):
    error_type = ErrorType.PARSE


class DomainError(QKnotError, ValueError):
    error_type = ErrorType.DOMAIN


class PreconditionError(QKnotError, ValueError):
    error_type = ErrorType.PRECONDITION


class ConvergenceError(QKnotError, ArithmeticError):
    error_type = ErrorType.CONVERGENCE


class PoleError(QKnotError, ArithmeticError):
    error_type = ErrorType.POLE


class CapExceededError(QKnotError):
    error_type = ErrorType.CAP_EXCEEDED


class OutputError(QKnotError, OSError):
    error_type = ErrorType.IO


EXIT_CODES = {
    ErrorType.PARSE: 2,
    ErrorType.DOMAIN: 2,
    ErrorType.PRECONDITION: 2,
    ErrorType.CAP_EXCEEDED: 3,
    ErrorType.IO: 4,
}


def exit_code_for(exception: BaseException) -> int:
    """Map an exception to the documented CLI exit code (1 when unmapped)."""
    if isinstance(exception, QKnotError):
        return EXIT_CODES.get(exception.error_type, 1)
    if isinstance(exception, OSError):
        return 4
    return 1


class ErrorRecord:
    """Structured error information for one failed sweep cell"""

    def __init__(
        self,
        error_type: ErrorType,
        message: str,
        severity: ErrorSeverity,
        runner: str,
        cell: Optional[Dict[str, Any]] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.error_type = error_type
        self.message = message
        self.severity = severity
        self.runner = runner
        self.cell = cell or {}
        self.details = details or {}
        self.timestamp = datetime.now()

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization"""
        return {
            'error_type': self.error_type.value,
            'message': self.message,
            'severity': self.severity.value,
            'runner': self.runner,
            'cell': self.cell,
            'details': self.details,
            'timestamp': self.timestamp.isoformat()
        }

    @classmethod
    def from_exception(
        cls,
        exception: Exception,
        runner: str,
        cell: Optional[Dict[str, Any]] = None
    ) -> 'ErrorRecord':
        """Create an ErrorRecord from an exception"""
        if isinstance(exception, QKnotError):
            error_type = exception.error_type
            details = dict(exception.details)
        else:
            error_type = cls._classify_exception(exception)
            details = {}
        details['exception_type'] = type(exception).__name__

        return cls(
            error_type=error_type,
            message=str(exception),
            severity=cls._determine_severity(error_type),
            runner=runner,
            cell=cell,
            details=details
        )

    @staticmethod
    def _classify_exception(exception: Exception) -> ErrorType:
        """Classify a foreign exception by its message"""
        error_msg = str(exception).lower()

        if isinstance(exception, OSError) or any(
            word in error_msg for word in ['permission', 'no such file', 'disk']
        ):
            return ErrorType.IO

        if any(word in error_msg for word in ['converge', 'maxsteps', 'iteration']):
            return ErrorType.CONVERGENCE

        if any(word in error_msg for word in ['division by zero', 'pole', 'singular']):
            return ErrorType.POLE

        if isinstance(exception, ValueError):
            return ErrorType.DOMAIN

        return ErrorType.UNKNOWN

    @staticmethod
    def _determine_severity(error_type: ErrorType) -> ErrorSeverity:
        """Determine severity based on error type"""
        severity_map = {
            ErrorType.IO: ErrorSeverity.CRITICAL,
            ErrorType.CAP_EXCEEDED: ErrorSeverity.CRITICAL,
            ErrorType.PARSE: ErrorSeverity.CRITICAL,
            ErrorType.CONVERGENCE: ErrorSeverity.HIGH,
            ErrorType.POLE: ErrorSeverity.MEDIUM,
            ErrorType.DOMAIN: ErrorSeverity.MEDIUM,
            ErrorType.PRECONDITION: ErrorSeverity.LOW,
            ErrorType.UNKNOWN: ErrorSeverity.HIGH
        }
        return severity_map.get(error_type, ErrorSeverity.MEDIUM)


class ErrorTracker:
    """Track and aggregate errors during a sweep"""

    def __init__(self):
        self.errors: List[ErrorRecord] = []

    def add_error(self, error: ErrorRecord):
        self.errors.append(error)

    def record(self, exception: Exception, runner: str, cell: Optional[Dict[str, Any]] = None):
        self.add_error(ErrorRecord.from_exception(exception, runner, cell))

    def has_critical_errors(self) -> bool:
        return any(e.severity == ErrorSeverity.CRITICAL for e in self.errors)

    def get_summary(self) -> Dict[str, Any]:
        """Get error summary statistics"""
        type_counts: Dict[str, int] = {}
        severity_counts: Dict[str, int] = {}

        for error in self.errors:
            type_counts[error.error_type.value] = type_counts.get(error.error_type.value, 0) + 1
            severity_counts[error.severity.value] = severity_counts.get(error.severity.value, 0) + 1

        return {
            'total_errors': len(self.errors),
            'by_type': type_counts,
            'by_severity': severity_counts,
            'has_critical': self.has_critical_errors()
        }

    def to_list(self) -> List[Dict[str, Any]]:
        return [error.to_dict() for error in self.errors]
