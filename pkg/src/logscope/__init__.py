"""Happens-before analysis of vector-clock-annotated distributed-system logs."""

from .clock import ClockOrdering, VectorClock
from .graph import CausalGraph, build_graph, graph_from_export
from .infer import CauseEffectModel, Posterior, bayes_posterior, estimate_model, rank_root_causes
from .logmodel import LogEvent, ParseConfig, ParsedLog, Violation, parse_log, validate
from .search import (
    EventPredicate,
    LinkKind,
    MatchSet,
    Motif,
    grep_filter,
    keyword_search,
    motif_search,
    parse_motif,
)
from .sim2pc import SimConfig, Vote, delay_chain, fig4_config, simulate, simulate_run

__version__ = "0.1.0"

__all__ = [
    "CausalGraph",
    "CauseEffectModel",
    "ClockOrdering",
    "EventPredicate",
    "LinkKind",
    "LogEvent",
    "MatchSet",
    "Motif",
    "ParseConfig",
    "ParsedLog",
    "Posterior",
    "SimConfig",
    "VectorClock",
    "Violation",
    "Vote",
    "bayes_posterior",
    "build_graph",
    "delay_chain",
    "estimate_model",
    "fig4_config",
    "graph_from_export",
    "grep_filter",
    "keyword_search",
    "motif_search",
    "parse_log",
    "parse_motif",
    "rank_root_causes",
    "simulate",
    "simulate_run",
    "validate",
]
