"""
Exploration, random runs and rendering tests.
"""
import pytest

from app.constants.enums import BoundKind
from app.modules.dsl.parser import parse_protocol
from app.modules.semantics.explorer import explore, find_trace, run_one, terminal_states, to_dot
from app.modules.semantics.formatting import format_local_state, format_trace
from app.modules.semantics.models import GlobalState, Protocol, Received
from app.modules.semantics.schemas import Bounds
from app.modules.semantics.service import initial_state, step
from app.modules.terms.models import Atom, Int, Tuple

CYCLE = """
machine #1 { initial a; a -- #2!ping -> b; b -- ?pong -> a; }
machine #2 { initial a; a -- ?ping -> b; b -- #1!pong -> a; }
"""

FLOOD = """
machine #1 { initial a; a -- #2!x -> b; b -- #2!x -> c; c -- #2!x -> d; }
machine #2 { initial o; }
"""


def walk(protocol: Protocol, movers: list[int]) -> list[GlobalState]:
    """States visited when the machines at the given positions move in turn."""
    g = initial_state(protocol)
    states = [g]
    for mover in movers:
        pid = protocol.machines[mover].pid
        g = next(s.state for s in step(protocol, g) if s.event.machine == pid)
        states.append(g)
    return states


class TestExplore:
    """Test exhaustive exploration."""

    def test_pingpong_single_trace(self, load_example):
        """Test that ping/pong has one maximal trace."""
        result = explore(load_example("pingpong"))
        assert result.complete
        assert result.verdict == "Complete"
        assert result.reachable_states == 5
        assert result.edge_count == 4
        assert len(result.traces) == 1
        assert len(result.traces[0]) == 5

    def test_memory_cell_golden_trace(self, load_example):
        """Test a hand-picked interleaving of the memory cell protocol."""
        protocol = load_example("mem4")
        # #3 initialises, #1 reads and writes, #2 reads after #1's write lands
        states = walk(protocol, [3, 0, 1, 0, 0, 1, 1, 2, 0, 0, 0, 2, 2, 0])
        assert len(states) == 15
        assert [format_local_state(local) for local in states[-1]] == [
            "(s0, [], {P -> #2, S -> 3})",
            "(c3, [], {X -> 0})",
            "(d3, [], {X -> 1})",
            "(e1, [], {})",
        ]

        result = explore(protocol)
        assert result.complete
        trace = find_trace(result, states)
        assert trace is not None
        assert trace.is_maximal
        assert trace.events[8].value == Tuple((Atom("put"), Int(1)))
        assert trace.events[8].mailbox_position == 0

    def test_memory_cell_outcomes_after_initialisation(self, load_example):
        """Test the stored values once the initial put lands first."""
        result = explore(load_example("mem4"))
        initialised_first = [
            t for t in result.traces
            if next(e for e in t.events if isinstance(e, Received)).value
            == Tuple((Atom("put"), Int(0)))
        ]
        stored = {t.terminal[0].env.get("S") for t in initialised_first}
        assert stored == {Int(1), Int(2), Int(3)}

    def test_max_depth(self, load_example):
        """Test the max_depth bound."""
        result = explore(load_example("pingpong"), Bounds(max_depth=1))
        assert not result.complete
        assert result.bound is BoundKind.MAX_DEPTH
        assert result.verdict == "BoundExceeded(max_depth)"
        assert result.traces[0].truncated is BoundKind.MAX_DEPTH

    def test_depth_limit_equal_to_trace_length_is_complete(self, load_example):
        """Test that a terminal configuration at exactly max_depth is not truncated."""
        result = explore(load_example("pingpong"), Bounds(max_depth=4))
        assert result.complete
        assert result.verdict == "Complete"
        assert result.truncated == {}
        (trace,) = result.traces
        assert trace.truncated is None
        assert trace.is_maximal
        assert len(trace.events) == 4

    def test_max_states(self, load_example):
        """Test the max_states bound."""
        result = explore(load_example("mem4"), Bounds(max_states=5))
        assert result.bound is BoundKind.MAX_STATES
        assert len(result.graph) - len(result.truncated) <= 5

    def test_max_mailbox_len(self):
        """Test the max_mailbox_len bound."""
        result = explore(parse_protocol(FLOOD).protocol, Bounds(max_mailbox_len=2))
        assert result.bound is BoundKind.MAX_MAILBOX_LEN

    def test_max_traces(self, load_example):
        """Test the max_traces bound."""
        result = explore(load_example("mem4"), Bounds(max_traces=1))
        assert result.bound is BoundKind.MAX_TRACES
        assert len(result.traces) == 1

    def test_cycle_is_cut(self):
        """Test that a cycle ends its trace."""
        protocol = parse_protocol(CYCLE).protocol
        result = explore(protocol)
        assert result.bound is BoundKind.CYCLE
        (trace,) = result.traces
        assert trace.truncated is BoundKind.CYCLE
        assert trace.terminal == initial_state(protocol)

    @pytest.mark.parametrize("name", ["mem4", "fork", "twosends"])
    def test_independent_of_worker_count(self, load_example, name):
        """Test that the worker count does not change the result."""
        protocol = load_example(name)
        sequential = explore(protocol, jobs=1)
        parallel = explore(protocol, jobs=8)
        assert list(sequential.graph) == list(parallel.graph)
        assert sequential.traces == parallel.traces

    def test_twosends_traces_converge(self, load_example):
        """Test that both twosends traces end in the same configuration."""
        result = explore(load_example("twosends"))
        assert len(result.traces) == 2
        assert len(terminal_states(result)) == 1

    def test_fork_has_two_outcomes(self, load_example):
        """Test that fork ends in either branch."""
        result = explore(load_example("fork"))
        assert sorted(g[0].state for g in terminal_states(result)) == ["f", "g"]


class TestRunOne:

    def test_same_seed_same_trace(self, load_example):
        """Test that one seed gives one trace."""
        protocol = load_example("mem4")
        assert run_one(protocol, seed=42) == run_one(protocol, seed=42)

    def test_run_is_an_explored_trace(self, load_example):
        """Test that a random run is one of the explored traces."""
        protocol = load_example("mem4")
        result = explore(protocol)
        trace = run_one(protocol, seed=7)
        assert trace.is_maximal
        assert find_trace(result, trace.states) is not None

    def test_depth_bound(self, load_example):
        """Test that a run stops at max_depth."""
        trace = run_one(load_example("pingpong"), seed=0, bounds=Bounds(max_depth=2))
        assert trace.truncated is BoundKind.MAX_DEPTH
        assert len(trace.events) == 2

    def test_depth_bound_reached_by_terminal_run(self, load_example):
        """Test that a run ending exactly at max_depth is maximal."""
        trace = run_one(load_example("pingpong"), seed=0, bounds=Bounds(max_depth=4))
        assert trace.truncated is None
        assert trace.is_maximal
        assert len(trace.events) == 4


class TestRendering:

    def test_format_trace_marks_changes(self, load_example):
        """Test that changed machines are starred."""
        result = explore(load_example("pingpong"))
        lines = format_trace(result.traces[0]).splitlines()
        assert lines[0] == "0  <(p0, [], {}), (q0, [], {})>"
        assert lines[1] == "1  <*(p1, [], {}), *(q0, [ping], {})>  % #1 sends ping to #2"
        assert len(lines) == 5

    def test_format_truncated_trace(self, load_example):
        """Test the truncation marker."""
        result = explore(load_example("pingpong"), Bounds(max_depth=1))
        assert format_trace(result.traces[0]).endswith("... truncated (max_depth)")

    def test_dot_output(self, load_example):
        """Test the Graphviz rendering."""
        dot = to_dot(explore(load_example("pingpong")))
        assert dot.startswith("digraph reachability {")
        assert dot.count(" -> ") == 4
        assert "peripheries=2" in dot
