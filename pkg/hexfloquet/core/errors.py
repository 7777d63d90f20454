"""
Exception hierarchy.

Library code raises these; the CLI maps them to exit statuses the way an
HTTP layer maps service failures to status codes. Validation findings that
are data (coloring violations, failing detectors) are returned in report
objects instead.
"""


class FloquetError(Exception):
    """Base class for every error raised by hexfloquet."""

    exit_status = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class LayoutError(FloquetError):
    """Unknown device, invalid patch dimensions or malformed layout document."""


class CircuitError(FloquetError):
    """A circuit could not be built as requested."""


class ScheduleError(FloquetError):
    """A round schedule is too short or does not fit the code or layout."""


class NoiseError(FloquetError):
    """Invalid error probability or depolarizing strength."""


class SimulationError(FloquetError):
    """The engine cannot execute a circuit or read a shot file."""


class AnalysisError(FloquetError):
    """Detection-rate post-processing failed."""


class CalibrationError(FloquetError):
    """A calibration snapshot failed to parse or validate."""


class UsageError(FloquetError):
    """Invalid command-line usage."""

    exit_status = 2


class VerificationError(FloquetError):
    """Detectors fired on a noiseless circuit."""
