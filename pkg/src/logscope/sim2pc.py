"""Deterministic two-phase-commit simulator emitting vector-clocked logs.

One discrete-event loop over a time-ordered queue drives the protocol:
the manager broadcasts a prepare, each participant replies with its
configured vote, the manager logs each vote arrival (ties resolved in
host order), decides commit iff every vote was commit, broadcasts the
decision, and each participant acknowledges.  Receive-style events are
logged exactly when the message arrives; a host's ``local_processing``
delays its outgoing messages, never its receive timestamps, so arrival
times satisfy ``t_recv = t_depart + delay`` exactly.
"""

from __future__ import annotations

import heapq
import itertools
import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .clock import VectorClock, validate_host
from .errors import InvalidConfig, UndefinedDelay
from .logmodel import LogEvent, ParsedLog, make_event


class Vote(Enum):
    COMMIT = "commit"
    ABORT = "abort"

    @classmethod
    def parse(cls, text: str) -> "Vote":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise InvalidConfig(f"vote must be 'commit' or 'abort', got {text!r}") from None


class EventKind(Enum):
    SEND = "send"
    RECEIVE = "receive"
    LOCAL = "local"


@dataclass(frozen=True)
class SimConfig:
    """One 2PC scenario.

    ``delays`` maps ordered host pairs to propagation delay in ms.  The
    ``seed`` field is reserved for randomized delay modes; the v1 timing
    model is fully deterministic.
    """

    manager: str
    participants: tuple[str, ...]
    delays: Mapping[tuple[str, str], int]
    votes: Mapping[str, Vote]
    local_processing: Mapping[str, int] = field(default_factory=dict)
    seed: int = 0

    def validate(self) -> None:
        try:
            validate_host(self.manager)
            for p in self.participants:
                validate_host(p)
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from exc
        if self.manager in self.participants:
            raise InvalidConfig(f"manager {self.manager} cannot also be a participant")
        if not self.participants:
            raise InvalidConfig("at least one participant is required")
        if len(set(self.participants)) != len(self.participants):
            raise InvalidConfig("participants must be unique")
        for p in self.participants:
            if p not in self.votes:
                raise InvalidConfig(f"no vote configured for participant {p}")
            for pair in ((self.manager, p), (p, self.manager)):
                if self._delay_or_none(pair) is None:
                    raise InvalidConfig(f"no delay configured for {pair[0]}->{pair[1]}")
        for (src, dst), ms in self.delays.items():
            if ms < 0:
                raise InvalidConfig(f"delay {src}->{dst} is negative: {ms}")
        for host, ms in self.local_processing.items():
            if ms < 0:
                raise InvalidConfig(f"processing delay for {host} is negative: {ms}")

    def delay(self, src: str, dst: str) -> int:
        ms = self._delay_or_none((src, dst))
        if ms is None:
            raise UndefinedDelay(f"no delay configured for {src}->{dst}")
        return ms

    def processing(self, host: str) -> int:
        return self.local_processing.get(host, 0)

    def _delay_or_none(self, pair: tuple[str, str]) -> int | None:
        return self.delays.get(pair)

    @classmethod
    def from_dict(cls, doc: dict) -> "SimConfig":
        """Load a config from its JSON form (see README for the schema)."""
        try:
            delays = {}
            for entry in doc.get("delays", []):
                delays[(entry["from"], entry["to"])] = int(entry["ms"])
            votes = {host: Vote.parse(v) for host, v in doc.get("votes", {}).items()}
            processing = {h: int(ms) for h, ms in doc.get("local_processing", {}).items()}
            return cls(
                manager=doc["manager"],
                participants=tuple(doc["participants"]),
                delays=delays,
                votes=votes,
                local_processing=processing,
                seed=int(doc.get("seed", 0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidConfig(f"bad simulation config: {exc}") from exc


@dataclass(frozen=True)
class SimEvent:
    sim_time: int
    host: str
    kind: EventKind
    action: str
    description: str
    clock: VectorClock


@dataclass(frozen=True)
class Message:
    """Bookkeeping for one simulated message delivery."""

    src_event: int
    dst_event: int
    src_host: str
    dst_host: str
    depart: int
    delay: int


@dataclass
class SimRun:
    """Full simulation output: events in emission order plus the message ledger."""

    config: SimConfig
    events: list[SimEvent]
    messages: list[Message]

    def to_parsed_log(self) -> ParsedLog:
        events = tuple(
            make_event(id=i, host=e.host, clock=e.clock, description=e.description, sim_time=e.sim_time)
            for i, e in enumerate(self.events)
        )
        return ParsedLog(events=events)


def fig4_config() -> SimConfig:
    """The golden three-node scenario: commit and abort votes, commit arriving first."""
    return SimConfig(
        manager="node-2",
        participants=("node-1", "node-3"),
        delays={
            ("node-2", "node-1"): 10,
            ("node-1", "node-2"): 10,
            ("node-2", "node-3"): 15,
            ("node-3", "node-2"): 15,
        },
        votes={"node-1": Vote.COMMIT, "node-3": Vote.ABORT},
    )


def _host_tag(host: str) -> str:
    digits = re.search(r"(\d+)$", host)
    return digits.group(1) if digits else host


def simulate_run(cfg: SimConfig, paper_labels: bool = False) -> SimRun:
    """Run the protocol and return events plus the message ledger."""
    cfg.validate()

    clocks: dict[str, VectorClock] = {h: VectorClock() for h in (cfg.manager,) + cfg.participants}
    events: list[SimEvent] = []
    messages: list[Message] = []
    pending_votes = {p: cfg.votes[p] for p in cfg.participants}
    votes_seen: list[Vote] = []

    seq = itertools.count()
    queue: list[tuple[int, str, int, object]] = []

    def schedule(time: int, tiebreak: str, fn) -> None:
        heapq.heappush(queue, (time, tiebreak, next(seq), fn))

    def emit(time: int, host: str, kind: EventKind, description: str, received: VectorClock | None) -> int:
        base = clocks[host].merge(received) if received is not None else clocks[host]
        clocks[host] = base.tick(host)
        events.append(
            SimEvent(
                sim_time=time,
                host=host,
                kind=kind,
                action=description.split()[0],
                description=description,
                clock=clocks[host],
            )
        )
        return len(events) - 1

    def post(src_event: int, src: str, dst: str, payload: VectorClock, fn) -> None:
        depart = events[src_event].sim_time + cfg.processing(src)
        delay = cfg.delay(src, dst)
        arrival = depart + delay

        def deliver(time: int) -> None:
            dst_event = fn(time, payload)
            messages.append(
                Message(
                    src_event=src_event,
                    dst_event=dst_event,
                    src_host=src,
                    dst_host=dst,
                    depart=depart,
                    delay=delay,
                )
            )

        schedule(arrival, src if dst == cfg.manager else dst, deliver)

    def label(neutral: str, paper: str) -> str:
        return paper if paper_labels else neutral

    def start(time: int) -> None:
        ev = emit(time, cfg.manager, EventKind.SEND, label("prepare", "tx-abort"), None)
        snapshot = clocks[cfg.manager]
        for p in cfg.participants:
            def vote_handler(t: int, payload: VectorClock, participant=p) -> int:
                vote = pending_votes[participant]
                desc = label(f"vote-{vote.value}", f"tx-{vote.value}")
                ev_vote = emit(t, participant, EventKind.RECEIVE, desc, payload)

                def recv_handler(t2: int, payload2: VectorClock, sender=participant, v=vote) -> int:
                    neutral = f"recv-{v.value} from {sender}"
                    paper = f"N_{_host_tag(sender)}-{v.value}"
                    ev_recv = emit(t2, cfg.manager, EventKind.RECEIVE, label(neutral, paper), payload2)
                    votes_seen.append(v)
                    if len(votes_seen) == len(cfg.participants):
                        schedule(t2, cfg.manager, decide)
                    return ev_recv

                post(ev_vote, participant, cfg.manager, clocks[participant], recv_handler)
                return ev_vote

            post(ev, cfg.manager, p, snapshot, vote_handler)

    def decide(time: int) -> None:
        committed = all(v is Vote.COMMIT for v in votes_seen)
        decision = "tx-commit" if committed else "tx-abort"
        ev = emit(time, cfg.manager, EventKind.SEND, decision, None)
        outcome = "tx-committed" if committed else "tx-aborted"
        snapshot = clocks[cfg.manager]
        for p in cfg.participants:
            def ack_handler(t: int, payload: VectorClock, participant=p) -> int:
                return emit(t, participant, EventKind.RECEIVE, outcome, payload)

            post(ev, cfg.manager, p, snapshot, ack_handler)

    schedule(0, cfg.manager, start)
    while queue:
        time, _tiebreak, _seq, fn = heapq.heappop(queue)
        fn(time)

    return SimRun(config=cfg, events=events, messages=messages)


def simulate(cfg: SimConfig, paper_labels: bool = False) -> ParsedLog:
    """Simulate one 2PC run; identical configs give byte-identical logs."""
    return simulate_run(cfg, paper_labels=paper_labels).to_parsed_log()


def delay_chain(cfg: SimConfig, path: list[str], t0: int = 0) -> list[tuple[str, int]]:
    """Cumulative arrival times along a path of hosts: t_{k+1} = t_k + PD[k->k+1]."""
    if not path:
        return []
    times = [(path[0], t0)]
    t = t0
    for src, dst in zip(path, path[1:]):
        t += cfg.delay(src, dst)
        times.append((dst, t))
    return times


def config_to_dict(cfg: SimConfig) -> dict:
    return {
        "manager": cfg.manager,
        "participants": list(cfg.participants),
        "delays": [
            {"from": src, "to": dst, "ms": ms} for (src, dst), ms in sorted(cfg.delays.items())
        ],
        "votes": {h: v.value for h, v in sorted(cfg.votes.items())},
        "local_processing": {h: ms for h, ms in sorted(cfg.local_processing.items())},
        "seed": cfg.seed,
    }


def load_config(path: str) -> SimConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return SimConfig.from_dict(json.load(fh))
