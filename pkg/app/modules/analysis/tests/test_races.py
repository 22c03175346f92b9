"""
Incoming multiset and race detection tests.
"""
from collections import Counter

import pytest

from app.core.exceptions import RequiresCompleteExploration
from app.modules.analysis.service import IncomingIndex, detect_races, incoming_multisets
from app.modules.dsl.parser import parse_protocol
from app.modules.semantics.explorer import explore, terminal_states
from app.modules.semantics.schemas import Bounds
from app.modules.semantics.service import initial_state
from app.modules.terms.models import Atom, Int, Pid, Tuple


def tup(*elements):
    return Tuple(elements)


# #2 only becomes ready to send b after #1 has been ready to send a for a step
STALE = """
machine #0 { initial r; final f g; r -- ?a -> f; r -- ?b -> g; }
machine #1 { initial s0; final s1; s0 -- #0!a -> s1; }
machine #2 { initial t0; final t2; t0 -- #1!x -> t1; t1 -- #0!b -> t2; }
"""

# a and b can both be delivered before #0 gets to choose between them
LATE_CHOICE = """
machine #0 { initial s0; final f g; s0 -- ?c -> s1; s1 -- ?a -> f; s1 -- ?b -> g; }
machine #1 { initial p0; final p2; p0 -- #0!c -> p1; p1 -- #0!a -> p2; }
machine #2 { initial t0; final t1; t0 -- #0!b -> t1; }
"""


class TestIncomingMultisets:

    def test_memory_cell_initial_group(self, load_example):
        """Test the incoming multisets at the memory cell's initial configuration."""
        protocol = load_example("mem4")
        incoming = incoming_multisets(protocol, initial_state(protocol))
        assert incoming[Pid(0)] == Counter({
            tup(Atom("get"), Pid(1)): 1,
            tup(Atom("get"), Pid(2)): 1,
            tup(Atom("put"), Int(0)): 1,
        })
        assert all(not incoming[pid] for pid in (Pid(1), Pid(2), Pid(3)))

    def test_index_matches_step(self, load_example):
        """Test that the cached index agrees with stepping."""
        protocol = load_example("mem4")
        result = explore(protocol)
        index = IncomingIndex(result)
        for g in list(result.graph)[:20]:
            assert index[g] == incoming_multisets(protocol, g)

    def test_binary_groups_stay_singletons(self, load_example):
        """Test that two-machine protocols never receive two messages at once."""
        for name in ("pingpong", "twosends"):
            assert IncomingIndex(explore(load_example(name))).largest() <= 1


class TestDetectRaces:
    """Test race reports."""

    def test_fork_races_once(self, load_example):
        """Test the single race of the fork protocol."""
        (report,) = detect_races(explore(load_example("fork")))
        assert report.machine == Pid(0)
        assert report.state == "r"
        assert report.group_index == 0
        assert report.racing_messages == (Atom("a"), Atom("b"))
        assert report.matching_messages == 2
        assert report.distinct_targets == 2
        witnessed = {(w.message, w.target) for w in report.witnesses}
        assert witnessed == {(Atom("a"), "f"), (Atom("b"), "g")}
        assert len(report.trace_prefix) == 1
        assert report.witness_traces == [0, 1, 2, 3]

    def test_pingpong_is_race_free(self, load_example):
        """Test ping/pong."""
        assert detect_races(explore(load_example("pingpong"))) == []

    def test_twosends_is_race_free(self, load_example):
        """Test that FIFO order from one sender is not a race."""
        assert detect_races(explore(load_example("twosends"))) == []

    def test_memory_cell_races_on_first_group(self, load_example):
        """Test the contention on the memory cell's first group."""
        reports = detect_races(explore(load_example("mem4")))
        first = reports[0]
        assert first.machine == Pid(0)
        assert first.state == "s0"
        assert first.group_index == 0
        assert first.matching_messages == 3
        assert first.distinct_targets == 2

    def test_reports_are_deduplicated(self, load_example):
        """Test that each machine, state and group content is reported once."""
        reports = detect_races(explore(load_example("mem4")))
        keys = [
            (r.machine, r.state, frozenset(Counter(r.racing_messages).items())) for r in reports
        ]
        assert len(keys) == len(set(keys))

    def test_message_waiting_before_its_rival(self):
        """Test a race between a message that waited longer and one that became ready later."""
        result = explore(parse_protocol(STALE).protocol)
        assert sorted(g[0].state for g in terminal_states(result)) == ["f", "g"]
        (report,) = detect_races(result)
        assert (report.machine, report.state) == (Pid(0), "r")
        assert report.racing_messages == (Atom("a"), Atom("b"))
        assert report.group_index == 1
        assert report.distinct_targets == 2

    def test_rivals_delivered_before_the_choice(self):
        """Test a race decided by mailbox order after both messages have arrived."""
        result = explore(parse_protocol(LATE_CHOICE).protocol)
        assert sorted(g[0].state for g in terminal_states(result)) == ["f", "g"]
        reports = detect_races(result)
        assert [(r.machine, r.state, r.racing_messages) for r in reports] == [
            (Pid(0), "s1", (Atom("a"), Atom("b")))
        ]

    def test_message_sent_before_its_rival_was_ready(self):
        """Test that a message delivered before its rival could be sent does not race."""
        protocol = parse_protocol(
            "machine #0 { initial r; final f g; r -- ?a -> f; r -- ?b -> g; }\n"
            "machine #1 { initial s0; final s2; s0 -- #0!a -> s1; s1 -- #2!go -> s2; }\n"
            "machine #2 { initial t0; final t2; t0 -- ?go -> t1; t1 -- #0!b -> t2; }"
        ).protocol
        result = explore(protocol)
        assert [g[0].state for g in terminal_states(result)] == ["f"]
        assert detect_races(result) == []

    def test_bounded_exploration_refused(self, load_example):
        """Test that a bounded exploration is refused."""
        result = explore(load_example("fork"), Bounds(max_depth=1))
        with pytest.raises(RequiresCompleteExploration):
            detect_races(result)
