"""Exception types shared across the toolkit."""

from __future__ import annotations


class LogscopeError(Exception):
    """Base class for all toolkit errors."""


class MalformedClock(LogscopeError):
    """A clock field is not a valid sparse clock encoding for its event."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class DuplicateClock(LogscopeError):
    """The same (host, clock) pair occurs twice in one log."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class NonMatchingLine(LogscopeError):
    """A non-blank input line matched no parse pattern."""

    def __init__(self, line_no: int, line: str):
        self.line_no = line_no
        self.line = line
        super().__init__(f"line {line_no}: does not match the parse pattern: {line!r}")


class CycleDetected(LogscopeError):
    """The event relation contains a cycle; the input clocks are corrupt."""


class UnknownEvent(LogscopeError):
    """An event id is not present in the graph."""


class GraphTooLarge(LogscopeError):
    """The log exceeds the configured event cap for graph construction."""


class EmptyQuery(LogscopeError):
    """A search keyword was empty."""


class MotifSyntaxError(LogscopeError):
    """A motif text form could not be parsed."""


class EmptyGraph(LogscopeError):
    """Model estimation requires at least one event."""


class ZeroEvidence(LogscopeError):
    """A posterior is undefined because the evidence probability is zero."""


class UnknownClass(LogscopeError):
    """An event class is not present in the model."""


class InvalidConfig(LogscopeError):
    """A simulation configuration violates its invariants."""


class UndefinedDelay(LogscopeError):
    """No propagation delay is configured for a required host pair."""
