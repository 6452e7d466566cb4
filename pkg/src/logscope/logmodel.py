"""Event model and line-grammar parsing for vector-clocked logs.

The default line grammar is ``<host> <clock-json> <description>`` with single
spaces, where the clock is the canonical encoding from :mod:`logscope.clock`.
A custom pattern may be supplied as long as it binds the named groups
``host``, ``clock`` and ``event``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .clock import VectorClock, validate_host
from .errors import DuplicateClock, MalformedClock, NonMatchingLine

DEFAULT_PATTERN = r"^(?P<host>\S+) (?P<clock>\{\S*\}) (?P<event>.*)$"

REQUIRED_GROUPS = ("host", "clock", "event")


@dataclass(frozen=True)
class ParseConfig:
    """Line grammar for one log format.

    ``multi_host`` records that one file interleaves events from several
    hosts; single-host-per-file collection is out of scope here.
    """

    pattern: str = DEFAULT_PATTERN
    multi_host: bool = True

    def __post_init__(self) -> None:
        compiled = re.compile(self.pattern)
        missing = [g for g in REQUIRED_GROUPS if g not in compiled.groupindex]
        if missing:
            raise ValueError(f"pattern must bind named groups {REQUIRED_GROUPS}, missing {missing}")
        object.__setattr__(self, "_compiled", compiled)

    @property
    def compiled(self) -> re.Pattern[str]:
        return self._compiled  # type: ignore[attr-defined]


@dataclass(frozen=True)
class LogEvent:
    """One logged event.

    ``action`` is the first whitespace-delimited token of the description.
    ``sim_time`` (milliseconds) is populated only for simulator-generated
    logs; analysis never depends on it.
    """

    id: int
    host: str
    clock: VectorClock
    action: str
    description: str
    sim_time: int | None = None

    def render(self) -> str:
        """The event in the default line grammar."""
        return f"{self.host} {self.clock.to_text()} {self.description}"


def make_event(
    id: int, host: str, clock: VectorClock, description: str, sim_time: int | None = None
) -> LogEvent:
    """Build a LogEvent, deriving the action field from the description."""
    parts = description.split(None, 1)
    action = parts[0] if parts else ""
    return LogEvent(id=id, host=host, clock=clock, action=action, description=description, sim_time=sim_time)


@dataclass(frozen=True)
class ParsedLog:
    """Immutable parse result: events in file order plus observed hosts."""

    events: tuple[LogEvent, ...]
    unmatched: tuple[tuple[int, str], ...] = ()

    @property
    def hosts(self) -> tuple[str, ...]:
        return tuple(sorted({e.host for e in self.events}))

    def render(self) -> str:
        """Text form in the default line grammar, one event per line."""
        return "".join(e.render() + "\n" for e in self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[LogEvent]:
        return iter(self.events)


def parse_log(text: str, cfg: ParseConfig | None = None, *, on_unmatched: str = "error") -> ParsedLog:
    """Parse raw log text into typed events.

    Blank lines are skipped.  Non-blank lines that match no pattern raise
    :class:`NonMatchingLine` when ``on_unmatched="error"`` (the default) or
    are collected on the result when ``on_unmatched="collect"``.
    """
    if cfg is None:
        cfg = ParseConfig()
    if on_unmatched not in ("error", "collect"):
        raise ValueError(f"on_unmatched must be 'error' or 'collect', got {on_unmatched!r}")

    events: list[LogEvent] = []
    unmatched: list[tuple[int, str]] = []
    seen: set[tuple[str, VectorClock]] = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        m = cfg.compiled.match(line)
        if m is None:
            if on_unmatched == "error":
                raise NonMatchingLine(line_no, line)
            unmatched.append((line_no, line))
            continue
        host = m.group("host")
        try:
            validate_host(host)
        except ValueError as exc:
            raise MalformedClock(str(exc), line_no) from exc
        clock = VectorClock.from_text(m.group("clock"), line_no)
        if clock.get(host) < 1:
            raise MalformedClock(
                f"event on {host} has own-host counter {clock.get(host)}; every event ticks its own host",
                line_no,
            )
        key = (host, clock)
        if key in seen:
            raise DuplicateClock(f"duplicate (host, clock) pair: {host} {clock.to_text()}", line_no)
        seen.add(key)
        events.append(make_event(len(events), host, clock, m.group("event")))
    return ParsedLog(events=tuple(events), unmatched=tuple(unmatched))


@dataclass(frozen=True)
class Violation:
    """One clock-rule inconsistency found in a parsed log."""

    kind: str
    event_id: int
    host: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind} event={self.event_id} host={self.host}: {self.message}"


OWN_COUNTER_REGRESSION = "OwnCounterRegression"
ORPHAN_ENTRY = "OrphanEntry"


def validate(log: ParsedLog) -> list[Violation]:
    """Check a parsed log against the clock update rules.

    Reports, per host, events whose own counter fails to strictly increase
    in file order, and clock entries for observed foreign hosts that no
    logged event on that host could have produced.  Entries for hosts never
    seen in the log are tolerated: their events may simply not be logged.
    """
    violations: list[Violation] = []

    last_own: dict[str, int] = {}
    for event in log.events:
        own = event.clock.get(event.host)
        prev = last_own.get(event.host)
        if prev is not None and own <= prev:
            violations.append(
                Violation(
                    kind=OWN_COUNTER_REGRESSION,
                    event_id=event.id,
                    host=event.host,
                    message=f"own counter {own} does not increase past {prev}",
                )
            )
        last_own[event.host] = own

    # Own counters actually logged per host, for the justification scan.
    produced: dict[str, set[int]] = {}
    for event in log.events:
        produced.setdefault(event.host, set()).add(event.clock.get(event.host))

    for event in log.events:
        for other_host, count in event.clock.items():
            if other_host == event.host or other_host not in produced:
                continue
            if count not in produced[other_host]:
                violations.append(
                    Violation(
                        kind=ORPHAN_ENTRY,
                        event_id=event.id,
                        host=event.host,
                        message=f"entry {other_host}:{count} matches no logged event on {other_host}",
                    )
                )
    return violations
