"""Keyword search, motif search, and grep-style filtering.

The motif language is deliberately tiny: a step constrains one event
(action equality, host equality, description substring), and consecutive
steps are linked by happens-before, a communication edge, or same-host
program-order adjacency.  Text form::

    [action=prepare] -comm-> [*] -comm-> [host=node-2]

Link tokens are ``-hb->``, ``-comm->`` and ``-next->``; predicates combine
with commas inside one step.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyQuery, MotifSyntaxError
from .graph import CausalGraph
from .logmodel import LogEvent

ACTION_EXACT = "action-exact"
SUBSTRING = "substring"


def keyword_search(g: CausalGraph, keyword: str, mode: str = ACTION_EXACT) -> set[int]:
    """Event ids matching a keyword.

    ``action-exact`` matches the action field exactly; ``substring`` matches
    anywhere in the description.
    """
    if not keyword:
        raise EmptyQuery("search keyword is empty")
    if mode == ACTION_EXACT:
        return {e.id for e in g.events if e.action == keyword}
    if mode == SUBSTRING:
        return {e.id for e in g.events if keyword in e.description}
    raise ValueError(f"unknown search mode {mode!r}")


class LinkKind(Enum):
    HAPPENS_BEFORE = "-hb->"
    COMM_EDGE = "-comm->"
    SAME_HOST_NEXT = "-next->"


@dataclass(frozen=True)
class EventPredicate:
    """Conjunction of per-event constraints; all None matches any event."""

    action: str | None = None
    host: str | None = None
    description_contains: str | None = None

    def matches(self, e: LogEvent) -> bool:
        if self.action is not None and e.action != self.action:
            return False
        if self.host is not None and e.host != self.host:
            return False
        if self.description_contains is not None and self.description_contains not in e.description:
            return False
        return True


@dataclass(frozen=True)
class Motif:
    steps: tuple[EventPredicate, ...]
    links: tuple[LinkKind, ...]
    distinct: bool = True

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("motif needs at least one step")
        if len(self.links) != len(self.steps) - 1:
            raise ValueError("motif needs exactly one link between consecutive steps")


@dataclass(frozen=True)
class MatchSet:
    """Deduplicated, lexicographically sorted match tuples."""

    matches: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.matches)

    def __iter__(self):
        return iter(self.matches)


_STEP_RE = re.compile(r"\[([^\]]*)\]")
_LINK_TOKENS = {k.value: k for k in LinkKind}


def parse_motif(text: str, distinct: bool = True) -> Motif:
    """Parse the compact motif text form."""
    steps: list[EventPredicate] = []
    links: list[LinkKind] = []
    rest = text.strip()
    if not rest:
        raise MotifSyntaxError("empty motif")
    expecting_step = True
    while rest:
        if expecting_step:
            m = _STEP_RE.match(rest)
            if m is None:
                raise MotifSyntaxError(f"expected a [step] at: {rest!r}")
            steps.append(_parse_predicate(m.group(1)))
            rest = rest[m.end():].lstrip()
        else:
            for token, kind in _LINK_TOKENS.items():
                if rest.startswith(token):
                    links.append(kind)
                    rest = rest[len(token):].lstrip()
                    break
            else:
                raise MotifSyntaxError(f"expected a link (-hb->, -comm->, -next->) at: {rest!r}")
        expecting_step = not expecting_step
    if expecting_step:
        raise MotifSyntaxError("motif ends with a dangling link")
    return Motif(steps=tuple(steps), links=tuple(links), distinct=distinct)


def _parse_predicate(body: str) -> EventPredicate:
    body = body.strip()
    if body in ("", "*"):
        return EventPredicate()
    action = host = desc = None
    for part in body.split(","):
        part = part.strip()
        if part.startswith("action="):
            action = part[len("action="):]
        elif part.startswith("host="):
            host = part[len("host="):]
        elif part.startswith("desc~"):
            desc = part[len("desc~"):]
        else:
            raise MotifSyntaxError(f"unknown predicate {part!r} (use action=, host=, desc~ or *)")
    return EventPredicate(action=action, host=host, description_contains=desc)


def motif_search(g: CausalGraph, m: Motif) -> MatchSet:
    """Exhaustive backtracking search for all tuples matching a motif."""
    candidates = [sorted(e.id for e in g.events if pred.matches(e)) for pred in m.steps]
    comm = set(g.comm_edges)
    next_on_host = _program_order_next(g)

    found: set[tuple[int, ...]] = set()
    chosen: list[int] = []

    def admissible(prev: int, nxt: int, link: LinkKind) -> bool:
        if link is LinkKind.HAPPENS_BEFORE:
            return g.reachable(prev, nxt)
        if link is LinkKind.COMM_EDGE:
            return (prev, nxt) in comm
        return next_on_host.get(prev) == nxt

    def extend(step: int) -> None:
        if step == len(m.steps):
            found.add(tuple(chosen))
            return
        for eid in candidates[step]:
            if m.distinct and eid in chosen:
                continue
            if step > 0 and not admissible(chosen[-1], eid, m.links[step - 1]):
                continue
            chosen.append(eid)
            extend(step + 1)
            chosen.pop()

    extend(0)
    return MatchSet(matches=tuple(sorted(found)))


def _program_order_next(g: CausalGraph) -> dict[int, int]:
    """Successor of each event in its own host's program order."""
    per_host: dict[str, list[LogEvent]] = {}
    for e in g.events:
        per_host.setdefault(e.host, []).append(e)
    nxt: dict[int, int] = {}
    for events in per_host.values():
        ordered = sorted(events, key=lambda e: e.clock.get(e.host))
        for a, b in zip(ordered, ordered[1:]):
            nxt[a.id] = b.id
    return nxt


def grep_filter(text: str, pattern: str, head: int | None = None, tail: int | None = None) -> str:
    """Lines containing the pattern as a substring, in original order.

    An empty pattern matches every line.  ``head``/``tail`` truncate the
    match list the way ``| head -n K`` and ``| tail -n K`` would.
    """
    matches = [line for line in text.splitlines() if pattern in line]
    if head is not None:
        matches = matches[:head]
    if tail is not None:
        matches = matches[-tail:] if tail > 0 else []
    if not matches:
        return ""
    return "\n".join(matches) + "\n"
