"""Exception types shared across the package.

The service layer maps these onto machine-readable error codes, and the
CLI maps them onto exit codes, so they live in one place.
"""


class DigitBenchError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(DigitBenchError, ValueError):
    """An argument violated an operation's preconditions."""


class TrainingDivergedError(DigitBenchError, RuntimeError):
    """Non-finite values appeared during a training update."""

    def __init__(self, epoch: int):
        self.epoch = epoch
        super().__init__(f"training diverged (non-finite values) at epoch {epoch}")


class PatternFormatError(DigitBenchError, ValueError):
    """A pattern file could not be parsed."""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


class ModelFormatError(DigitBenchError, ValueError):
    """A model file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IdxFormatError(DigitBenchError, ValueError):
    """An IDX stream is malformed; carries the offending byte offset."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (at byte offset {offset})")
