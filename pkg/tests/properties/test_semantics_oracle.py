"""
The explorer against the naive interleaving enumerator.
"""
from collections import Counter

import pytest
from hypothesis import given, settings

from app.modules.semantics.explorer import explore, terminal_states
from app.modules.terms.models import Int
from tests.support.generators import tiny_protocols
from tests.support.oracle import all_traces, canonical

pytestmark = pytest.mark.slow


def explored_traces(protocol):
    result = explore(protocol, jobs=1)
    assert result.complete
    return [tuple(canonical(g) for g in trace.states) for trace in result.traces]


@settings(max_examples=1000)
@given(tiny_protocols())
def test_same_traces_as_oracle(protocol):
    """Test the explorer against a naive reference enumeration."""
    assert Counter(explored_traces(protocol)) == Counter(all_traces(protocol))


def test_memory_cell_traces_match_oracle(load_example):
    """Test the memory cell traces against the reference enumeration."""
    protocol = load_example("mem4")
    assert Counter(explored_traces(protocol)) == Counter(all_traces(protocol))


def test_memory_cell_stored_values_match_oracle(load_example):
    """Test the final stored values against the reference enumeration."""
    protocol = load_example("mem4")
    result = explore(protocol)
    explored = {g[0].env.get("S") for g in terminal_states(result)}
    expected = {dict(trace[-1][0][2]).get("S") for trace in all_traces(protocol)}
    assert explored == expected
    assert {Int(1), Int(2), Int(3)} <= explored
