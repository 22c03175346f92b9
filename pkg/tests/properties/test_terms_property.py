"""
Matching inverts substitution on linear patterns.
"""
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from app.modules.terms.models import Env
from app.modules.terms.service import evaluate, is_linear, match, substitute, variables
from tests.support.generators import patterns, values

pytestmark = pytest.mark.slow


@settings(max_examples=500)
@given(patterns(), st.data())
def test_match_recovers_substituted_env(pattern, data):
    """Test that matching a pattern against its own instance returns the bindings used."""
    assume(is_linear(pattern))
    env = Env.of({name: data.draw(values(), label=name) for name in sorted(variables(pattern))})
    assert match(evaluate(substitute(env, pattern)), pattern) == env


@settings(max_examples=500)
@given(patterns(), values())
def test_match_binds_exactly_pattern_variables(pattern, value):
    """Test that a successful match binds every pattern variable and nothing else."""
    assume(is_linear(pattern))
    env = match(value, pattern)
    if env is not None:
        assert set(env) == variables(pattern)
        assert substitute(env, pattern) == value
