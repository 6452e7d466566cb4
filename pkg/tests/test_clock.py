"""Clock semantics: the published example values plus the partial-order laws."""

import random

import pytest
from hypothesis import given, strategies as st

from logscope.clock import ClockOrdering, VectorClock
from logscope.errors import MalformedClock

from helpers import naive_compare, random_clock

HOSTS = ["node-1", "node-2", "node-3"]


def vc(n1=0, n2=0, n3=0) -> VectorClock:
    return VectorClock({"node-1": n1, "node-2": n2, "node-3": n3})


clock_entries = st.dictionaries(
    st.sampled_from(HOSTS + ["node-4"]), st.integers(min_value=0, max_value=9), max_size=4
)
clocks = clock_entries.map(VectorClock)


class TestTick:
    def test_first_manager_event(self):
        # the transaction's first event over three hosts: (0,1,0)
        assert VectorClock().tick("node-2") == vc(0, 1, 0)

    def test_manager_decision_tick(self):
        # (1,3,1) ticked at the manager gives the decision clock (1,4,1)
        assert vc(1, 3, 1).tick("node-2") == vc(1, 4, 1)

    def test_tick_from_zero(self):
        assert vc(0, 0, 0).tick("node-1") == vc(1, 0, 0)

    def test_other_entries_unchanged(self):
        before = vc(2, 5, 1)
        after = before.tick("node-3")
        assert after.get("node-3") == 2
        assert after.get("node-1") == 2 and after.get("node-2") == 5


class TestMerge:
    def test_elementwise_max(self):
        assert vc(1, 2, 0).merge(vc(0, 1, 1)) == vc(1, 2, 1)

    def test_merge_then_tick_reaches_decision_input(self):
        # receive path of the abort vote at the manager: (1,2,0) ∨ (0,1,1) then tick
        merged = vc(1, 2, 0).merge(vc(0, 1, 1))
        assert merged.tick("node-2") == vc(1, 3, 1)

    def test_empty_is_identity(self):
        c = vc(3, 1, 4)
        assert c.merge(VectorClock()) == c
        assert VectorClock().merge(c) == c

    def test_receive_of_first_vote(self):
        assert vc(1, 1, 0).merge(vc(0, 1, 0)) == vc(1, 1, 0)


class TestCompare:
    def test_prepare_before_decision(self):
        assert vc(0, 1, 0).compare(vc(1, 3, 1)) is ClockOrdering.BEFORE

    def test_acks_concurrent(self):
        assert vc(2, 4, 1).compare(vc(1, 4, 2)) is ClockOrdering.CONCURRENT

    def test_equal(self):
        assert vc(1, 1, 0).compare(vc(1, 1, 0)) is ClockOrdering.EQUAL

    def test_votes_concurrent(self):
        assert vc(1, 1, 0).compare(vc(0, 1, 1)) is ClockOrdering.CONCURRENT

    def test_after_is_flipped_before(self):
        assert vc(1, 3, 1).compare(vc(0, 1, 0)) is ClockOrdering.AFTER


class TestTextForm:
    def test_canonical_encoding(self):
        assert vc(1, 4, 1).to_text() == '{"node-1":1,"node-2":4,"node-3":1}'

    def test_zero_entries_dropped(self):
        assert vc(0, 1, 0).to_text() == '{"node-2":1}'

    def test_round_trip(self):
        c = vc(2, 4, 1)
        assert VectorClock.from_text(c.to_text()) == c

    def test_accepts_explicit_zeros(self):
        assert VectorClock.from_text('{"node-1":0,"node-2":3}') == vc(0, 3, 0)

    @pytest.mark.parametrize(
        "bad",
        ["not json", "[1,2]", '{"a":-1}', '{"a":1.5}', '{"a":true}', '{"a b":1}', '{"":1}', "42"],
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(MalformedClock):
            VectorClock.from_text(bad)

    def test_large_counters_survive(self):
        big = 2**63 - 1
        c = VectorClock({"node-1": big})
        assert VectorClock.from_text(c.to_text()).get("node-1") == big
        assert c.tick("node-1").get("node-1") == big + 1


class TestPartialOrderLaws:
    @given(clocks, clocks)
    def test_compare_matches_naive_oracle(self, a, b):
        assert a.compare(b) is naive_compare(dict(a.entries), dict(b.entries))

    @given(clocks, clocks)
    def test_antisymmetry(self, a, b):
        assert a.compare(b) is b.compare(a).flipped()

    @given(clocks, clocks, clocks)
    def test_transitivity_of_before(self, a, b, c):
        before = ClockOrdering.BEFORE
        if a.compare(b) is before and b.compare(c) is before:
            assert a.compare(c) is before

    @given(clocks, st.sampled_from(HOSTS))
    def test_tick_strictly_advances(self, c, host):
        assert c.compare(c.tick(host)) is ClockOrdering.BEFORE

    @given(clocks, clocks)
    def test_merge_commutative(self, a, b):
        assert a.merge(b) == b.merge(a)

    @given(clocks, clocks, clocks)
    def test_merge_associative(self, a, b, c):
        assert a.merge(b).merge(c) == a.merge(b.merge(c))

    @given(clocks)
    def test_merge_idempotent(self, c):
        assert c.merge(c) == c

    @given(clocks, clocks, clocks)
    def test_merge_is_monotone(self, a, b, x):
        if a.compare(b) is ClockOrdering.BEFORE:
            merged = a.merge(x).compare(b.merge(x))
            assert merged in (ClockOrdering.BEFORE, ClockOrdering.EQUAL)


def test_randomized_compare_against_oracle():
    rng = random.Random(20240811)
    for _ in range(2000):
        a = random_clock(rng, HOSTS)
        b = random_clock(rng, HOSTS)
        assert a.compare(b) is naive_compare(dict(a.entries), dict(b.entries))


def test_immutability():
    c = vc(1, 2, 3)
    ticked = c.tick("node-1")
    merged = c.merge(vc(9, 0, 0))
    assert c == vc(1, 2, 3)
    assert ticked != c and merged != c
    with pytest.raises(AttributeError):
        c.entries = {}
