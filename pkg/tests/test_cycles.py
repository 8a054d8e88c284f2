"""
Tests for cycle notation and the group text format.
"""

import pytest

from centra.cycles import (
    format_cycles,
    format_group_text,
    parse_cycles,
    parse_group_text,
    read_group_file,
)
from centra.exceptions import GroupFormatError


class TestCycleNotation:
    """Parsing and formatting of 1-based cycles."""

    def test_parse_single_cycle(self):
        """A 3-cycle maps 1->2->3->1."""
        assert parse_cycles("(1 2 3)", 3).array_form == [1, 2, 0]

    def test_parse_identity(self):
        """Empty cycles are the identity of the requested degree."""
        p = parse_cycles("()", 4)
        assert p.is_Identity
        assert p.size == 4

    def test_parse_product_of_cycles(self):
        """Disjoint cycles and fixed points."""
        p = parse_cycles("(1 2)(4 5)", 6)
        assert p.array_form == [1, 0, 2, 4, 3, 5]

    def test_parse_accepts_commas(self):
        """Commas separate points like spaces."""
        assert parse_cycles("(1,2,3)", 3) == parse_cycles("(1 2 3)", 3)

    @pytest.mark.parametrize(
        "text",
        ["(1 2", "1 2)", "(1 2)(2 3)", "(0 1)", "(1 9)", "(1 2) x"],
    )
    def test_parse_rejects_malformed(self, text):
        """Unbalanced parentheses, repeats and out-of-range points are errors."""
        with pytest.raises(ValueError):
            parse_cycles(text, 5)

    def test_format_cycles(self):
        """Formatting drops fixed points."""
        p = parse_cycles("(1 2 3)(4 5)", 6)
        assert format_cycles(p) == "(1 2 3)(4 5)"
        assert format_cycles(parse_cycles("()", 3)) == "()"


class TestGroupText:
    """The degree/gen file format."""

    def test_parse_cyclic_group_file(self):
        """``degree 3`` with ``gen (1 2 3)`` gives one generator of order 3."""
        parsed = parse_group_text("degree 3\ngen (1 2 3)\n")
        assert parsed.degree == 3
        assert len(parsed.generators) == 1
        assert parsed.generators[0].order() == 3
        assert parsed.name is None

    def test_comments_and_name(self):
        """Comments are ignored; a ``name:`` comment names the group."""
        text = "# name: C3\n\n# a comment\ndegree 3  # trailing\ngen (1 2 3)\n"
        parsed = parse_group_text(text)
        assert parsed.name == "C3"
        assert parsed.degree == 3

    def test_tab_after_keyword(self):
        """Keywords may be followed by tabs as well as spaces."""
        parsed = parse_group_text("degree\t4\ngen\t(1 2)(3 4)\ngen  (1 3)(2 4)\n")
        assert parsed.degree == 4
        assert [g.array_form for g in parsed.generators] == [[1, 0, 3, 2], [2, 3, 0, 1]]

    def test_malformed_cycle_reports_line(self):
        """The error carries the 1-based line number."""
        with pytest.raises(GroupFormatError) as excinfo:
            parse_group_text("degree 3\ngen (1 2 3)\ngen (1 2\n")
        assert excinfo.value.line_number == 3

    @pytest.mark.parametrize(
        ("text", "line"),
        [
            ("gen (1 2)\ndegree 3\n", 1),
            ("degree 3\ndegree 4\n", 2),
            ("degree x\n", 1),
            ("degree 0\n", 1),
            ("degree 3\ngenerator (1 2)\n", 2),
        ],
    )
    def test_structural_errors(self, text, line):
        """Misplaced, repeated and unknown lines are rejected."""
        with pytest.raises(GroupFormatError) as excinfo:
            parse_group_text(text)
        assert excinfo.value.line_number == line

    def test_missing_degree(self):
        """A file without a degree line is rejected."""
        with pytest.raises(GroupFormatError, match="missing degree"):
            parse_group_text("# nothing here\n")

    def test_format_and_read_back(self, tmp_path):
        """A rendered file reads back with the same generators and name."""
        gens = [parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(1 2 3)", 5)]
        path = tmp_path / "a5.grp"
        path.write_text(format_group_text(5, gens, name="A5"), encoding="utf-8")
        parsed = read_group_file(path)
        assert parsed.name == "A5"
        assert list(parsed.generators) == gens
