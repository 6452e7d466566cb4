"""Model estimation, Bayes posteriors, and root-cause ranking."""

import math
import random
from fractions import Fraction

import pytest

from logscope.clock import VectorClock
from logscope.errors import EmptyGraph, UnknownClass, ZeroEvidence
from logscope.graph import build_graph
from logscope.infer import CauseEffectModel, bayes_posterior, estimate_model, rank_root_causes
from logscope.logmodel import ParsedLog, make_event

from helpers import enumerate_path_scores, random_dag_model


def chain_log(actions_by_host: list[tuple[str, str]]) -> ParsedLog:
    """A single causal chain: each event merges its predecessor's clock."""
    clock = VectorClock()
    events = []
    for i, (host, action) in enumerate(actions_by_host):
        clock = clock.tick(host)
        events.append(make_event(i, host, clock, action))
    return ParsedLog(events=tuple(events))


def disk_flush_corpus() -> ParsedLog:
    """Ten events: four flushes, three followed causally by io-contention.

    Each flush/contention pair lives on its own chain so no contention ever
    precedes a flush.
    """
    events = []

    def chain(host: str, actions: list[str]) -> None:
        c = VectorClock()
        for action in actions:
            c = c.tick(host)
            events.append(make_event(len(events), host, c, action))

    chain("disk-1", ["flush", "io-contention"])
    chain("disk-2", ["flush", "io-contention"])
    chain("disk-3", ["flush", "io-contention"])
    chain("disk-4", ["flush"])
    chain("other", ["noise", "noise", "noise"])
    return ParsedLog(events=tuple(events))


class TestEstimateModel:
    def test_disk_flush_edge_probability_unsmoothed(self):
        g = build_graph(disk_flush_corpus())
        model = estimate_model(g, alpha=0.0)
        assert model.edges[("flush", "io-contention")] == pytest.approx(0.75)

    def test_disk_flush_edge_probability_smoothed(self):
        g = build_graph(disk_flush_corpus())
        model = estimate_model(g, alpha=1.0)
        assert model.edges[("flush", "io-contention")] == pytest.approx((3 + 1) / (4 + 2))

    def test_priors_are_smoothed_relative_frequencies(self):
        g = build_graph(disk_flush_corpus())
        model = estimate_model(g, alpha=0.0)
        assert model.priors["flush"] == pytest.approx(0.4)
        assert model.priors["io-contention"] == pytest.approx(0.3)
        assert model.priors["noise"] == pytest.approx(0.3)
        model1 = estimate_model(g, alpha=1.0)
        assert model1.priors["flush"] == pytest.approx((4 + 1) / (10 + 3))

    def test_unrelated_classes_have_no_edge(self):
        g = build_graph(disk_flush_corpus())
        model = estimate_model(g)
        assert ("noise", "flush") not in model.edges
        assert ("flush", "noise") not in model.edges

    def test_unobserved_class_not_in_model(self):
        g = build_graph(chain_log([("h", "a"), ("h", "b")]))
        model = estimate_model(g)
        assert set(model.classes) == {"a", "b"}

    def test_probabilities_in_unit_interval(self):
        rng = random.Random(3)
        from helpers import random_execution

        for _ in range(10):
            g = build_graph(random_execution(rng, n_hosts=3, n_events=40))
            for alpha in (0.0, 0.5, 1.0):
                model = estimate_model(g, alpha=alpha)
                assert all(0 <= p <= 1 for p in model.priors.values())
                assert all(0 <= p <= 1 for p in model.edges.values())

    def test_empty_graph_rejected(self):
        with pytest.raises(EmptyGraph):
            estimate_model(build_graph(ParsedLog(events=())))

    def test_cycle_broken_deterministically(self):
        # b,a,b on one chain: p(b|a)=1/1 beats p(a|b)=1/2, so b->a is dropped
        log = chain_log([("h", "b"), ("h", "a"), ("h", "b")])
        model = estimate_model(build_graph(log), alpha=0.0)
        assert model.edges == {("a", "b"): 1.0}
        assert [(c, e) for c, e, _ in model.dropped_edges] == [("b", "a")]

    def test_model_export_shape(self):
        g = build_graph(disk_flush_corpus())
        doc = estimate_model(g).to_dict()
        assert list(doc) == ["classes", "priors", "edges"]
        assert all(list(e) == ["cause", "effect", "p"] for e in doc["edges"])


class TestBayesPosterior:
    def test_direct_arithmetic(self):
        assert bayes_posterior(0.9, 0.2, 0.45) == pytest.approx(0.4, abs=1e-12)

    def test_exact_with_fractions(self):
        got = bayes_posterior(Fraction(9, 10), Fraction(1, 5), Fraction(9, 20))
        assert got == Fraction(2, 5)

    def test_independence_identity(self):
        rng = random.Random(2024)
        for _ in range(200):
            p_effect = Fraction(rng.randint(1, 99), 100)
            p_cause = Fraction(rng.randint(0, 100), 100)
            assert bayes_posterior(p_effect, p_cause, p_effect) == p_cause

    def test_deterministic_cause(self):
        for p in (0.1, 0.5, 0.99):
            assert bayes_posterior(1.0, p, p) == 1.0

    def test_scale_consistency(self):
        # scaling cause up and evidence down by f multiplies the posterior by f^2
        f = Fraction(3, 2)
        base = bayes_posterior(Fraction(1, 2), Fraction(1, 5), Fraction(3, 5))
        scaled = bayes_posterior(Fraction(1, 2), Fraction(1, 5) * f, Fraction(3, 5) / f)
        assert scaled == base * f * f

    def test_zero_evidence(self):
        with pytest.raises(ZeroEvidence):
            bayes_posterior(0.5, 0.5, 0.0)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            bayes_posterior(1.5, 0.5, 0.5)
        with pytest.raises(ValueError):
            bayes_posterior(0.5, -0.1, 0.5)

    def test_inconsistent_estimates_clamped(self):
        assert bayes_posterior(0.9, 0.9, 0.1) == 1


class TestRankRootCauses:
    def test_two_node_chain_reduces_to_bayes(self):
        model = CauseEffectModel(
            classes=("d", "ioc"),
            priors={"d": 0.2, "ioc": 0.45},
            edges={("d", "ioc"): 0.9},
        )
        ranked = rank_root_causes(model, "ioc", 1)
        assert len(ranked) == 1
        assert ranked[0].cause == "d"
        assert ranked[0].probability == pytest.approx(0.4, abs=1e-12)

    def test_three_node_chain(self):
        model = CauseEffectModel(
            classes=("a", "b", "c"),
            priors={"a": 0.2, "b": 0.3, "c": 0.1},
            edges={("a", "b"): 0.5, ("b", "c"): 0.5},
        )
        (top, *_rest) = rank_root_causes(model, "c", 3)
        by_cause = {p.cause: p.probability for p in rank_root_causes(model, "c", 3)}
        assert by_cause["a"] == pytest.approx(0.5)

    def test_diamond_takes_max_product(self):
        model = CauseEffectModel(
            classes=("a", "b", "c", "d"),
            priors={"a": 0.1, "b": 0.2, "c": 0.2, "d": 0.1},
            edges={("a", "b"): 0.9, ("b", "d"): 0.9, ("a", "c"): 0.3, ("c", "d"): 0.3},
        )
        by_cause = {p.cause: p.probability for p in rank_root_causes(model, "d", 4)}
        assert by_cause["a"] == pytest.approx(0.9 * 0.9 * 0.1 / 0.1)

    def test_ties_break_by_label(self):
        model = CauseEffectModel(
            classes=("x", "y", "sym"),
            priors={"x": 0.2, "y": 0.2, "sym": 0.2},
            edges={("x", "sym"): 0.5, ("y", "sym"): 0.5},
        )
        ranked = rank_root_causes(model, "sym", 2)
        assert [p.cause for p in ranked] == ["x", "y"]

    def test_unknown_symptom(self):
        model = CauseEffectModel(classes=("a",), priors={"a": 1.0}, edges={})
        with pytest.raises(UnknownClass):
            rank_root_causes(model, "nope", 1)

    def test_zero_prior_symptom(self):
        model = CauseEffectModel(classes=("a", "b"), priors={"a": 0.5, "b": 0.0}, edges={("a", "b"): 0.5})
        with pytest.raises(ZeroEvidence):
            rank_root_causes(model, "b", 1)

    def test_matches_path_enumeration_oracle(self):
        rng = random.Random(808)
        checked = 0
        for _ in range(120):
            model = random_dag_model(rng)
            symptom = rng.choice(model.classes)
            expected = enumerate_path_scores(model, symptom)
            got = {p.cause: p.probability for p in rank_root_causes(model, symptom, len(model.classes))}
            assert set(got) == set(expected)
            for cause, score in expected.items():
                assert math.isclose(got[cause], score, rel_tol=1e-12)
            checked += 1
        assert checked == 120
