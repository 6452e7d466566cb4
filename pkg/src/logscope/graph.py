"""Happens-before graph construction and ordering queries.

The full relation ``a -> b iff clock(a) Before clock(b)`` is computed
pairwise, stored as per-event reachability bitsets, and reduced to its
covering (transitively minimal) edge set.  Cross-host covering edges are
interpreted as message deliveries.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass

from .clock import ClockOrdering, VectorClock
from .errors import CycleDetected, GraphTooLarge, UnknownEvent
from .logmodel import LogEvent, ParsedLog, make_event

DEFAULT_MAX_EVENTS = 1_000_000
MAX_EVENTS_ENV = "LOGSCOPE_MAX_EVENTS"


def max_events_limit(explicit: int | None = None) -> int:
    """Event cap for graph construction; the environment overrides the default."""
    if explicit is not None:
        return explicit
    env = os.environ.get(MAX_EVENTS_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_MAX_EVENTS


@dataclass(frozen=True)
class CausalGraph:
    """Events plus covering happens-before edges and a reachability index.

    Edges are (event id, event id) pairs.  Event ids need not be dense:
    a neighborhood view keeps the ids of its parent graph.
    """

    events: tuple[LogEvent, ...]
    covering_edges: tuple[tuple[int, int], ...]
    comm_edges: tuple[tuple[int, int], ...]
    _pos: dict[int, int]
    _reach: tuple[int, ...]  # bitmask over positions: strict Before successors

    @property
    def hosts(self) -> tuple[str, ...]:
        return tuple(sorted({e.host for e in self.events}))

    def event(self, event_id: int) -> LogEvent:
        pos = self._pos.get(event_id)
        if pos is None:
            raise UnknownEvent(f"no event with id {event_id}")
        return self.events[pos]

    def reachable(self, a: int, b: int) -> bool:
        """True iff event a strictly happens-before event b."""
        pa, pb = self._position(a), self._position(b)
        return bool(self._reach[pa] >> pb & 1)

    def ordering(self, a: int, b: int) -> ClockOrdering:
        """Ordering of two events; agrees with comparing their clocks."""
        pa, pb = self._position(a), self._position(b)
        if self.events[pa].clock == self.events[pb].clock:
            return ClockOrdering.EQUAL
        if self._reach[pa] >> pb & 1:
            return ClockOrdering.BEFORE
        if self._reach[pb] >> pa & 1:
            return ClockOrdering.AFTER
        return ClockOrdering.CONCURRENT

    def concurrent_pairs(self) -> list[tuple[int, int]]:
        """All unordered event pairs that are causally incomparable."""
        pairs: list[tuple[int, int]] = []
        n = len(self.events)
        for i in range(n):
            for j in range(i + 1, n):
                if self._reach[i] >> j & 1 or self._reach[j] >> i & 1:
                    continue
                if self.events[i].clock == self.events[j].clock:
                    continue
                pairs.append((self.events[i].id, self.events[j].id))
        pairs.sort()
        return pairs

    def predecessors(self, event_id: int) -> list[int]:
        """Direct covering predecessors, sorted by id."""
        return sorted(a for a, b in self.covering_edges if b == event_id)

    def successors(self, event_id: int) -> list[int]:
        """Direct covering successors, sorted by id."""
        return sorted(b for a, b in self.covering_edges if a == event_id)

    def past_cone(self, event_id: int) -> list[int]:
        """Ids of all events that happen-before the given event."""
        pos = self._position(event_id)
        return sorted(e.id for i, e in enumerate(self.events) if self._reach[i] >> pos & 1)

    def future_cone(self, event_id: int) -> list[int]:
        """Ids of all events the given event happens-before."""
        pos = self._position(event_id)
        mask = self._reach[pos]
        return sorted(self.events[i].id for i in _bits(mask))

    def neighborhood(self, event_id: int, radius: int) -> "CausalGraph":
        """Induced subgraph of events within ``radius`` covering-edge hops.

        Hops count both edge directions.  The result is a fully rebuilt
        graph over the kept events, with original ids preserved.
        """
        center = self._position(event_id)
        if radius < 0:
            raise ValueError("radius must be >= 0")
        adjacency: dict[int, set[int]] = {e.id: set() for e in self.events}
        for a, b in self.covering_edges:
            adjacency[a].add(b)
            adjacency[b].add(a)
        kept = {self.events[center].id}
        frontier = deque([(self.events[center].id, 0)])
        while frontier:
            node, dist = frontier.popleft()
            if dist == radius:
                continue
            for other in adjacency[node]:
                if other not in kept:
                    kept.add(other)
                    frontier.append((other, dist + 1))
        events = tuple(e for e in self.events if e.id in kept)
        return _build(events)

    def layers(self) -> dict[int, int]:
        """Longest-path layer per event id, for diagram layering.

        Minimal events sit at layer 0.  Raises CycleDetected if the covering
        edges do not form a DAG (possible only with corrupt clocks).
        """
        indegree = {e.id: 0 for e in self.events}
        succ: dict[int, list[int]] = {e.id: [] for e in self.events}
        for a, b in self.covering_edges:
            succ[a].append(b)
            indegree[b] += 1
        layer = {e.id: 0 for e in self.events}
        ready = deque(eid for eid in sorted(indegree) if indegree[eid] == 0)
        done = 0
        while ready:
            node = ready.popleft()
            done += 1
            for other in succ[node]:
                layer[other] = max(layer[other], layer[node] + 1)
                indegree[other] -= 1
                if indegree[other] == 0:
                    ready.append(other)
        if done != len(self.events):
            raise CycleDetected("covering edges contain a cycle; input clocks are corrupt")
        return layer

    def layer_order(self) -> list[int]:
        """Event ids sorted by (layer, sim_time if present, host, id).

        A deterministic linear extension of happens-before used for diagram
        layout and golden exports.
        """
        layer = self.layers()

        def key(e: LogEvent) -> tuple:
            st = e.sim_time if e.sim_time is not None else -1
            return (layer[e.id], st, e.host, e.id)

        return [e.id for e in sorted(self.events, key=key)]

    def to_dict(self) -> dict:
        """The JSON export contract consumed by the UI and golden tests."""
        events = []
        for e in sorted(self.events, key=lambda e: e.id):
            entry: dict = {
                "id": e.id,
                "host": e.host,
                "clock": dict(e.clock.items()),
                "action": e.action,
                "description": e.description,
            }
            if e.sim_time is not None:
                entry["sim_time"] = e.sim_time
            events.append(entry)
        return {
            "hosts": list(self.hosts),
            "events": events,
            "edges": [list(edge) for edge in self.covering_edges],
            "comm_edges": [list(edge) for edge in self.comm_edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def _position(self, event_id: int) -> int:
        pos = self._pos.get(event_id)
        if pos is None:
            raise UnknownEvent(f"no event with id {event_id}")
        return pos

    def __len__(self) -> int:
        return len(self.events)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def build_graph(log: ParsedLog, max_events: int | None = None) -> CausalGraph:
    """Build the happens-before graph for a parsed log."""
    limit = max_events_limit(max_events)
    if len(log.events) > limit:
        raise GraphTooLarge(f"log has {len(log.events)} events, cap is {limit}")
    return _build(tuple(log.events))


def graph_from_export(doc: dict) -> CausalGraph:
    """Rebuild a graph from the JSON export schema.

    Edges are recomputed from the embedded clocks, which keeps a single
    ordering engine; the export's edge lists are not trusted.
    """
    events = []
    for entry in doc["events"]:
        events.append(
            make_event(
                id=entry["id"],
                host=entry["host"],
                clock=VectorClock(entry["clock"]),
                description=entry["description"],
                sim_time=entry.get("sim_time"),
            )
        )
    return _build(tuple(events))


def _build(events: tuple[LogEvent, ...]) -> CausalGraph:
    n = len(events)
    pos = {e.id: i for i, e in enumerate(events)}
    if len(pos) != n:
        raise CycleDetected("duplicate event ids")

    # Strict Before implies a strictly smaller counter total, so scanning
    # pairs in total order covers every possible edge once.
    by_total = sorted(range(n), key=lambda i: (events[i].clock.total(), i))
    reach = [0] * n
    for a_idx in range(n):
        i = by_total[a_idx]
        ci = events[i].clock
        ti = ci.total()
        for b_idx in range(a_idx + 1, n):
            j = by_total[b_idx]
            if events[j].clock.total() == ti:
                continue
            if ci.leq(events[j].clock):
                reach[i] |= 1 << j

    # Covering edge a->b iff no c with a->c->b: drop successors implied
    # by a successor's own reach set.
    covering: list[tuple[int, int]] = []
    comm: list[tuple[int, int]] = []
    for i in range(n):
        implied = 0
        for j in _bits(reach[i]):
            implied |= reach[j]
        for j in _bits(reach[i] & ~implied):
            edge = (events[i].id, events[j].id)
            covering.append(edge)
            if events[i].host != events[j].host:
                comm.append(edge)
    covering.sort()
    comm.sort()
    return CausalGraph(
        events=events,
        covering_edges=tuple(covering),
        comm_edges=tuple(comm),
        _pos=pos,
        _reach=tuple(reach),
    )
