"""
Printing then parsing gives back the same protocol.
"""
import pytest
from hypothesis import given, settings

from app.modules.dsl.parser import parse_protocol
from app.modules.dsl.printer import print_protocol
from tests.support.generators import any_protocols

pytestmark = pytest.mark.slow


@settings(max_examples=1000)
@given(any_protocols())
def test_print_parse_fixpoint(protocol):
    """Test that printing then parsing gives the same protocol and text."""
    text = print_protocol(protocol)
    reparsed = parse_protocol(text).protocol
    assert reparsed == protocol
    assert print_protocol(reparsed) == text
