"""Vector clocks and the happens-before partial order.

A clock is a sparse map from host name to a logical counter; hosts absent
from the map have counter 0, so the host set is open-ended.  Clocks are
immutable: ``tick`` and ``merge`` return new values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Mapping

from .errors import MalformedClock


class ClockOrdering(Enum):
    """Outcome of comparing two clocks under happens-before."""

    BEFORE = "Before"
    AFTER = "After"
    CONCURRENT = "Concurrent"
    EQUAL = "Equal"

    def __str__(self) -> str:
        return self.value

    def flipped(self) -> "ClockOrdering":
        """The ordering with the argument roles swapped."""
        if self is ClockOrdering.BEFORE:
            return ClockOrdering.AFTER
        if self is ClockOrdering.AFTER:
            return ClockOrdering.BEFORE
        return self


def validate_host(name: str) -> str:
    """Check that a host id is a non-empty token with no whitespace."""
    if not isinstance(name, str) or not name or any(c.isspace() for c in name):
        raise ValueError(f"invalid host id: {name!r}")
    return name


@dataclass(frozen=True)
class VectorClock:
    """Immutable sparse vector clock.

    Zero entries are dropped on construction so equal clocks always have
    equal representations.
    """

    entries: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        normalized: dict[str, int] = {}
        for host, count in self.entries.items():
            validate_host(host)
            if isinstance(count, bool) or not isinstance(count, int):
                raise ValueError(f"counter for {host!r} is not an integer: {count!r}")
            if count < 0:
                raise ValueError(f"counter for {host!r} is negative: {count}")
            if count > 0:
                normalized[host] = count
        object.__setattr__(self, "entries", normalized)

    def get(self, host: str) -> int:
        return self.entries.get(host, 0)

    def tick(self, host: str) -> "VectorClock":
        """Advance one host's counter by one; all other entries unchanged."""
        validate_host(host)
        bumped = dict(self.entries)
        bumped[host] = bumped.get(host, 0) + 1
        return VectorClock(bumped)

    def merge(self, other: "VectorClock") -> "VectorClock":
        """Element-wise maximum over the union of both host sets."""
        merged = dict(self.entries)
        for host, count in other.entries.items():
            if count > merged.get(host, 0):
                merged[host] = count
        return VectorClock(merged)

    def leq(self, other: "VectorClock") -> bool:
        """Element-wise <=; absent entries count as 0."""
        return all(count <= other.entries.get(host, 0) for host, count in self.entries.items())

    def compare(self, other: "VectorClock") -> ClockOrdering:
        """Classify the pair as Before, After, Concurrent, or Equal."""
        if self.entries == other.entries:
            return ClockOrdering.EQUAL
        if self.leq(other):
            return ClockOrdering.BEFORE
        if other.leq(self):
            return ClockOrdering.AFTER
        return ClockOrdering.CONCURRENT

    def items(self) -> Iterator[tuple[str, int]]:
        """Entries in lexicographic host order."""
        return iter(sorted(self.entries.items()))

    def total(self) -> int:
        """Sum of all counters; strictly monotone along happens-before."""
        return sum(self.entries.values())

    def to_text(self) -> str:
        """Canonical text form: JSON object, sorted keys, no whitespace."""
        return json.dumps(dict(self.items()), separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_text(cls, text: str, line_no: int | None = None) -> "VectorClock":
        """Parse the canonical text form.

        Accepts any JSON object whose keys are host tokens and whose values
        are non-negative integers; explicit zeros are normalized away.
        """
        try:
            raw = json.loads(text)
        except (ValueError, TypeError) as exc:
            raise MalformedClock(f"not valid clock JSON: {text!r} ({exc})", line_no) from exc
        if not isinstance(raw, dict):
            raise MalformedClock(f"clock is not an object: {text!r}", line_no)
        try:
            return cls(raw)
        except ValueError as exc:
            raise MalformedClock(str(exc), line_no) from exc

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorClock):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.entries.items())))

    def __str__(self) -> str:
        return self.to_text()
