"""
Tests for computation caps.
"""

import pytest

from centra.config import ENV_VAR, Caps, active_caps, use_caps
from centra.corpus import make_symmetric
from centra.exceptions import CapExceededError


class TestCaps:
    """Parsing and scoping of caps."""

    def test_defaults(self):
        """Built-in values."""
        caps = Caps()
        assert caps.enumeration == 100_000
        assert caps.quotient == 20_000
        assert caps.isomorphism == 512

    def test_parse_short_keys(self):
        """``enum`` and ``quot`` are the documented short forms."""
        caps = Caps.parse("enum=5000,quot=300")
        assert caps.enumeration == 5000
        assert caps.quotient == 300
        assert caps.filter_limit == Caps().filter_limit

    def test_parse_full_field_names(self):
        """Field names are accepted too."""
        assert Caps.parse("exact_chain=77").exact_chain == 77

    def test_parse_empty_is_default(self):
        """Empty overrides leave the defaults."""
        assert Caps.parse("") == Caps()
        assert Caps.parse(" , ") == Caps()

    @pytest.mark.parametrize("text", ["bogus=1", "enum", "enum=0", "enum=-5", "enum=abc"])
    def test_parse_rejects(self, text):
        """Unknown keys and non-positive or non-numeric values."""
        with pytest.raises(ValueError):
            Caps.parse(text)

    def test_parse_on_base(self):
        """Overrides apply on top of a base."""
        base = Caps(enumeration=10)
        assert Caps.parse("quot=3", base=base) == Caps(enumeration=10, quotient=3)

    def test_from_env(self):
        """The environment variable is read from the given mapping."""
        caps = Caps.from_env({ENV_VAR: "enum=42"})
        assert caps.enumeration == 42
        assert Caps.from_env({}) == Caps()

    def test_use_caps_restores(self):
        """Nested overrides are undone on exit."""
        outer = active_caps()
        with use_caps(Caps(enumeration=10)):
            assert active_caps().enumeration == 10
            with use_caps(Caps(enumeration=20)):
                assert active_caps().enumeration == 20
            assert active_caps().enumeration == 10
        assert active_caps() == outer

    def test_enumeration_cap_is_enforced(self):
        """Listing elements of a group above the cap raises."""
        with use_caps(Caps(enumeration=100)), pytest.raises(CapExceededError) as excinfo:
            make_symmetric(5).table()
        assert excinfo.value.cap_name == "enumeration"
        assert excinfo.value.actual == 120
        assert excinfo.value.limit == 100
