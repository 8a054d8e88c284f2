"""
Shared fixtures.

Corpus groups are shared across the session so that their memoized
invariants are computed once. Tests that change caps build fresh groups
instead, since a memoized value would hide the cap.
"""

from pathlib import Path

import pytest

from centra.corpus import corpus_by_name
from centra.cycles import parse_cycles
from centra.permcore import GroupHandle

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def group():
    """Look up a built-in corpus group by name."""

    def lookup(name: str) -> GroupHandle:
        return corpus_by_name(name).group

    return lookup


@pytest.fixture(scope="session")
def entry():
    """Look up a built-in corpus entry by name."""
    return corpus_by_name


@pytest.fixture(scope="session")
def perm():
    """Parse 1-based cycle notation: ``perm("(1 2)", 4)``."""
    return parse_cycles


@pytest.fixture(scope="session")
def corrupted_table_path() -> Path:
    return FIXTURES / "corrupted_table.txt"
