"""Cause-effect model estimation and Bayes-posterior root-cause ranking.

Event classes default to the action field.  Co-occurrence is defined by
happens-before reachability: an edge cause->effect is supported by every
cause-class event that is followed (causally) by at least one effect-class
event.  Posteriors come from Bayes' theorem; chains are scored with the
max-product path conditional under an edge-independence assumption.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

from .errors import EmptyGraph, UnknownClass, ZeroEvidence
from .graph import CausalGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Posterior:
    cause: str
    probability: float


@dataclass(frozen=True)
class CauseEffectModel:
    """DAG of event classes with edge conditionals and class priors."""

    classes: tuple[str, ...]
    priors: dict[str, float]
    edges: dict[tuple[str, str], float]
    alpha: float = 1.0
    dropped_edges: tuple[tuple[str, str, float], ...] = ()

    def parents(self, label: str) -> list[str]:
        return sorted(c for (c, e) in self.edges if e == label)

    def children(self, label: str) -> list[str]:
        return sorted(e for (c, e) in self.edges if c == label)

    def ancestors(self, label: str) -> list[str]:
        seen: set[str] = set()
        stack = [label]
        while stack:
            node = stack.pop()
            for parent in self.parents(node):
                if parent not in seen:
                    seen.add(parent)
                    stack.append(parent)
        return sorted(seen)

    def to_dict(self) -> dict:
        return {
            "classes": list(self.classes),
            "priors": {c: self.priors[c] for c in self.classes},
            "edges": [
                {"cause": c, "effect": e, "p": p}
                for (c, e), p in sorted(self.edges.items())
            ],
        }


def estimate_model(
    g: CausalGraph,
    classifier: Callable[[str], str] | None = None,
    alpha: float = 1.0,
) -> CauseEffectModel:
    """Estimate priors and edge conditionals from a causal graph.

    With Laplace smoothing ``alpha`` and K observed classes:
    prior(c) = (count_c + alpha) / (N + alpha*K); edge p(effect|cause) =
    (cause events followed by an effect event + alpha) / (count_cause +
    2*alpha).  Edges exist only where the raw co-occurrence count is
    positive; self-edges are never created.  If class-level reachability is
    cyclic, the lowest-probability edge of each cycle is dropped.
    """
    if len(g.events) == 0:
        raise EmptyGraph("cannot estimate a model from an empty graph")
    if classifier is None:
        classifier = lambda action: action

    label_of = {e.id: classifier(e.action) for e in g.events}
    counts: dict[str, int] = {}
    for lbl in label_of.values():
        counts[lbl] = counts.get(lbl, 0) + 1
    classes = tuple(sorted(counts))
    k = len(classes)
    n = len(g.events)
    priors = {c: (counts[c] + alpha) / (n + alpha * k) for c in classes}

    # cooccur[(a, b)] = number of a-class events followed by >=1 b-class event
    cooccur: dict[tuple[str, str], int] = {}
    for e in g.events:
        cause = label_of[e.id]
        followed = {label_of[eid] for eid in g.future_cone(e.id)}
        for effect in followed:
            if effect != cause:
                cooccur[(cause, effect)] = cooccur.get((cause, effect), 0) + 1

    edges = {
        (cause, effect): (hits + alpha) / (counts[cause] + 2 * alpha)
        for (cause, effect), hits in cooccur.items()
        if hits > 0
    }
    edges, dropped = _break_cycles(edges)
    for cause, effect, p in dropped:
        logger.warning("dropped edge %s->%s (p=%.4g) to keep the class graph acyclic", cause, effect, p)
    return CauseEffectModel(
        classes=classes, priors=priors, edges=edges, alpha=alpha, dropped_edges=tuple(dropped)
    )


def _break_cycles(
    edges: dict[tuple[str, str], float]
) -> tuple[dict[tuple[str, str], float], list[tuple[str, str, float]]]:
    edges = dict(edges)
    dropped: list[tuple[str, str, float]] = []
    while True:
        cycle = _find_cycle(edges)
        if cycle is None:
            return edges, dropped
        weakest = min(cycle, key=lambda edge: (edges[edge], edge))
        dropped.append((weakest[0], weakest[1], edges[weakest]))
        del edges[weakest]


def _find_cycle(edges: dict[tuple[str, str], float]) -> list[tuple[str, str]] | None:
    succ: dict[str, list[str]] = {}
    for cause, effect in sorted(edges):
        succ.setdefault(cause, []).append(effect)

    state: dict[str, int] = {}  # 1 = on stack, 2 = done
    path: list[str] = []

    def visit(node: str) -> list[tuple[str, str]] | None:
        state[node] = 1
        path.append(node)
        for nxt in succ.get(node, ()):
            if state.get(nxt) == 1:
                start = path.index(nxt)
                loop = path[start:] + [nxt]
                return list(zip(loop, loop[1:]))
            if state.get(nxt) is None:
                found = visit(nxt)
                if found is not None:
                    return found
        path.pop()
        state[node] = 2
        return None

    for node in sorted(succ):
        if state.get(node) is None:
            found = visit(node)
            if found is not None:
                return found
    return None


def bayes_posterior(p_effect_given_cause, p_cause, p_effect):
    """P(cause|effect) by Bayes' theorem.

    Pure arithmetic: Fraction inputs stay exact.  Values above 1 signal
    inconsistent estimates; they are clamped with a logged diagnostic.
    """
    for name, value in (
        ("p_effect_given_cause", p_effect_given_cause),
        ("p_cause", p_cause),
        ("p_effect", p_effect),
    ):
        if not 0 <= value <= 1:
            raise ValueError(f"{name} must be in [0, 1], got {value}")
    if p_effect == 0:
        raise ZeroEvidence("p_effect is zero; posterior undefined")
    posterior = p_effect_given_cause * p_cause / p_effect
    if posterior > 1:
        logger.warning("posterior %.6g exceeds 1; estimates are inconsistent, clamping", float(posterior))
        return min(posterior, 1)
    return posterior


def rank_root_causes(m: CauseEffectModel, symptom: str, k: int = 5) -> list[Posterior]:
    """Top-k ancestor classes of a symptom, scored by chain posterior.

    score(a) = best-path product of edge conditionals a~>symptom, times
    prior(a) / prior(symptom).  Ties break by class label.  Scores above 1
    are reported as-is: the ranking is what matters and a value above 1
    flags inconsistent estimates.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if symptom not in m.priors:
        raise UnknownClass(f"unknown class {symptom!r}")
    p_symptom = m.priors[symptom]
    if p_symptom == 0:
        raise ZeroEvidence(f"class {symptom!r} has zero prior")

    best: dict[str, float] = {symptom: 1.0}

    def max_product(node: str) -> float:
        if node in best:
            return best[node]
        best[node] = 0.0  # guards against unrelated revisits; DAG has no cycles
        value = max(
            (m.edges[(node, child)] * max_product(child) for child in m.children(node)),
            default=0.0,
        )
        best[node] = value
        return value

    scored = []
    for ancestor in m.ancestors(symptom):
        path_conditional = max_product(ancestor)
        if path_conditional <= 0:
            continue
        score = path_conditional * m.priors[ancestor] / p_symptom
        scored.append(Posterior(cause=ancestor, probability=score))
    scored.sort(key=lambda p: (-p.probability, p.cause))
    return scored[:k]
