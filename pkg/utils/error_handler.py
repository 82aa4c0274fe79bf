import logging
import traceback
from exceptions import (
    WeylToolkitError,
    ScalarError,
    RootDataError,
    StructureConstantError,
    TruncationError,
    XiFunctionError,
    DepthNotStabilizedError,
    VerificationError,
    JobSpecError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class ErrorHandler:
    """Handle and format errors for user display."""

    @staticmethod
    def format_error(exception):
        """Format exception details for display to users."""
        if isinstance(exception, JobSpecError):
            return f"Usage error: {str(exception)}"
        elif isinstance(exception, ScalarError):
            return f"Scalar error: {str(exception)}"
        elif isinstance(exception, RootDataError):
            return f"Root data error: {str(exception)}"
        elif isinstance(exception, StructureConstantError):
            return f"Structure constant inconsistency: {str(exception)}"
        elif isinstance(exception, TruncationError):
            return f"Truncation error: {str(exception)}"
        elif isinstance(exception, XiFunctionError):
            return f"Invalid function on points: {str(exception)}"
        elif isinstance(exception, DepthNotStabilizedError):
            dims = ", ".join(str(d) for d in exception.history)
            return f"Depth did not stabilize (dimensions by depth: {dims})"
        elif isinstance(exception, VerificationError):
            return f"Verification failed: {str(exception)}"
        elif isinstance(exception, WeylToolkitError):
            return f"Error: {str(exception)}"
        elif isinstance(exception, ValueError):
            return f"Input error: {str(exception)}"
        elif isinstance(exception, FileNotFoundError):
            return f"File not found: {str(exception)}"
        elif isinstance(exception, PermissionError):
            return f"Permission error: {str(exception)}"
        else:
            return f"Error: {str(exception)}"

    @staticmethod
    def exit_code(exception):
        """Map an exception to the CLI exit code."""
        if isinstance(exception, (JobSpecError, ScalarError, ValueError)):
            return EXIT_USAGE
        return EXIT_FAILURE

    @staticmethod
    def log_exception(exception):
        """Log an exception with traceback."""
        error_message = f"Exception: {type(exception).__name__}: {str(exception)}"
        logger.error(error_message)
        logger.debug(f"Traceback: {traceback.format_exc()}")

    @staticmethod
    def handle_exception(exception, display_callback=None):
        """Handle exception: log it, optionally display it, and return the exit code."""
        ErrorHandler.log_exception(exception)

        error_message = ErrorHandler.format_error(exception)

        if display_callback:
            display_callback(error_message)

        return ErrorHandler.exit_code(exception)
