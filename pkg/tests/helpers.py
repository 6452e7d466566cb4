"""Shared test oracles and corpus generators.

Everything here is deliberately naive: brute-force scans and exhaustive
enumeration, independent of the library's own data structures, so tests can
compare the two routes.
"""

from __future__ import annotations

import random

from logscope.clock import ClockOrdering, VectorClock
from logscope.infer import CauseEffectModel
from logscope.logmodel import LogEvent, ParsedLog, make_event
from logscope.sim2pc import SimConfig, Vote

HOST_POOL = ["alpha", "bravo", "charlie", "delta", "echo", "foxtrot"]
ACTION_POOL = ["send", "recv", "work", "flush", "retry", "fail"]


# ---------------------------------------------------------------------------
# clock oracles


def naive_leq(a: dict[str, int], b: dict[str, int]) -> bool:
    hosts = set(a) | set(b)
    return all(a.get(h, 0) <= b.get(h, 0) for h in hosts)


def naive_compare(a: dict[str, int], b: dict[str, int]) -> ClockOrdering:
    a = {h: c for h, c in a.items() if c}
    b = {h: c for h, c in b.items() if c}
    if a == b:
        return ClockOrdering.EQUAL
    if naive_leq(a, b):
        return ClockOrdering.BEFORE
    if naive_leq(b, a):
        return ClockOrdering.AFTER
    return ClockOrdering.CONCURRENT


def random_clock(rng: random.Random, hosts: list[str], max_count: int = 6) -> VectorClock:
    return VectorClock({h: rng.randint(0, max_count) for h in hosts})


# ---------------------------------------------------------------------------
# graph oracles


def closure_by_compare(events: list[LogEvent]) -> set[tuple[int, int]]:
    """All (a, b) id pairs with clock(a) strictly before clock(b)."""
    pairs = set()
    for a in events:
        for b in events:
            if a.id == b.id:
                continue
            if a.clock.compare(b.clock) is ClockOrdering.BEFORE:
                pairs.add((a.id, b.id))
    return pairs


def concurrent_by_compare(events: list[LogEvent]) -> set[tuple[int, int]]:
    pairs = set()
    for i, a in enumerate(events):
        for b in events[i + 1 :]:
            if a.clock.compare(b.clock) is ClockOrdering.CONCURRENT:
                pairs.add(tuple(sorted((a.id, b.id))))
    return pairs


def reduction_by_removal(full: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Covering edges: drop every edge implied by a two-step path."""
    reachable = full  # the relation is already transitively closed
    return {
        (a, b)
        for (a, b) in full
        if not any((a, c) in reachable and (c, b) in reachable for c in {x for _, x in full})
    }


# ---------------------------------------------------------------------------
# corpus generators


def random_execution(rng: random.Random, n_hosts: int = 4, n_events: int = 40) -> ParsedLog:
    """A random message-passing execution obeying the clock update rules.

    Hosts perform local actions, send messages, and receive previously sent
    messages; the event list is a valid interleaving, so ``validate`` holds
    by construction.
    """
    hosts = HOST_POOL[:n_hosts]
    clocks = {h: VectorClock() for h in hosts}
    in_flight: list[tuple[str, VectorClock]] = []  # (destination, payload)
    events: list[LogEvent] = []

    for _ in range(n_events):
        deliverable = [i for i, (dst, _) in enumerate(in_flight)]
        choices = ["local", "send"]
        if deliverable:
            choices += ["recv", "recv"]
        kind = rng.choice(choices)
        if kind == "recv":
            dst, payload = in_flight.pop(rng.choice(deliverable))
            clocks[dst] = clocks[dst].merge(payload).tick(dst)
            desc = f"recv {rng.choice(ACTION_POOL)}"
            events.append(make_event(len(events), dst, clocks[dst], desc))
        else:
            host = rng.choice(hosts)
            clocks[host] = clocks[host].tick(host)
            desc = rng.choice(ACTION_POOL)
            if kind == "send":
                dst = rng.choice([h for h in hosts if h != host])
                in_flight.append((dst, clocks[host]))
                desc = f"send {desc} to {dst}"
            events.append(make_event(len(events), host, clocks[host], desc))
    return ParsedLog(events=tuple(events))


def random_sim_config(rng: random.Random, max_participants: int = 5) -> SimConfig:
    n = rng.randint(1, max_participants)
    participants = tuple(f"node-{i}" for i in range(1, n + 1))
    manager = "mgr"
    delays = {}
    for p in participants:
        delays[(manager, p)] = rng.randint(0, 40)
        delays[(p, manager)] = rng.randint(0, 40)
    votes = {p: rng.choice([Vote.COMMIT, Vote.ABORT]) for p in participants}
    return SimConfig(manager=manager, participants=participants, delays=delays, votes=votes)


# ---------------------------------------------------------------------------
# search and inference oracles


def scan_keyword(events, keyword: str, mode: str) -> set[int]:
    if mode == "substring":
        return {e.id for e in events if keyword in e.description}
    return {e.id for e in events if e.action == keyword}


def enumerate_path_scores(model: CauseEffectModel, symptom: str) -> dict[str, float]:
    """Score every class with a path to the symptom, by enumerating all paths."""

    def all_path_products(node: str) -> list[float]:
        products = []
        for (cause, effect), p in model.edges.items():
            if cause != node:
                continue
            if effect == symptom:
                products.append(p)
            products.extend(p * rest for rest in all_path_products(effect))
        return products

    scores: dict[str, float] = {}
    for root in model.classes:
        if root == symptom:
            continue
        products = all_path_products(root)
        if products:
            scores[root] = max(products) * model.priors[root] / model.priors[symptom]
    return scores


def random_dag_model(rng: random.Random, max_nodes: int = 8) -> CauseEffectModel:
    n = rng.randint(2, max_nodes)
    labels = [f"c{i}" for i in range(n)]
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.45:
                edges[(labels[i], labels[j])] = rng.uniform(0.05, 1.0)
    priors = {lbl: rng.uniform(0.01, 1.0) for lbl in labels}
    return CauseEffectModel(classes=tuple(labels), priors=priors, edges=edges)
