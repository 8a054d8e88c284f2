"""
Cycle notation and the group text format.

Points are 1-based in every text surface; internally permutations are
sympy ``Permutation`` objects on points ``0..degree-1``. A group file reads::

    # comment
    degree 5
    gen (1 2 3 4 5)
    gen (1 2 3)

Fixed points are omitted and blank lines are ignored.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path

from sympy.combinatorics import Permutation

from .exceptions import GroupFormatError

logger = logging.getLogger(__name__)

_CYCLE = re.compile(r"\(([^()]*)\)")
_CYCLES_LINE = re.compile(r"^(\([^()]*\)\s*)*$")


def identity_permutation(degree: int) -> Permutation:
    """Return the identity permutation on ``degree`` points."""
    return Permutation(list(range(degree)))


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation into a permutation of the given degree.

    Args:
        text: Cycles such as ``"(1 2 3)(4 5)"``; ``"()"`` is the identity
        degree: Number of points

    Returns:
        The permutation

    Raises:
        ValueError: On malformed cycles, repeated points or points out of range

    Example:
        >>> parse_cycles("(1 2 3)", 3).array_form
        [1, 2, 0]
    """
    compact = text.strip()
    if not _CYCLES_LINE.match(compact):
        raise ValueError(f"unbalanced or stray characters in {text!r}")
    cycles: list[list[int]] = []
    seen: set[int] = set()
    for body in _CYCLE.findall(compact):
        points = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
        for point in points:
            if not 1 <= point <= degree:
                raise ValueError(f"point {point} outside 1..{degree}")
            if point in seen:
                raise ValueError(f"point {point} repeated")
            seen.add(point)
        if len(points) > 1:
            cycles.append([p - 1 for p in points])
    if not cycles:
        return identity_permutation(degree)
    return Permutation(cycles, size=degree)


def format_cycles(perm: Permutation) -> str:
    """Format a permutation in 1-based cycle notation.

    Example:
        >>> format_cycles(Permutation([1, 2, 0, 4, 3]))
        '(1 2 3)(4 5)'
    """
    cycles = [c for c in perm.cyclic_form if len(c) > 1]
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(p + 1) for p in cycle) + ")" for cycle in cycles)


@dataclass(frozen=True)
class GroupText:
    """Parsed contents of a group file."""

    degree: int
    generators: tuple[Permutation, ...]
    name: str | None = None


def parse_group_text(text: str) -> GroupText:
    """Parse the group text format.

    A ``# name: ...`` comment sets the group name.

    Raises:
        GroupFormatError: With the 1-based line number of the offending line
    """
    degree: int | None = None
    name: str | None = None
    gens: list[Permutation] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        comment_start = raw.find("#")
        if comment_start >= 0:
            comment = raw[comment_start + 1 :].strip()
            if comment.lower().startswith("name:"):
                name = comment[5:].strip() or None
        line = (raw if comment_start < 0 else raw[:comment_start]).strip()
        if not line:
            continue
        keyword, *tail = line.split(None, 1)
        rest = tail[0] if tail else ""
        if keyword == "degree":
            if degree is not None:
                raise GroupFormatError(number, raw, "degree given twice")
            try:
                degree = int(rest.strip())
            except ValueError:
                raise GroupFormatError(number, raw, "degree is not an integer") from None
            if degree <= 0:
                raise GroupFormatError(number, raw, "degree must be positive")
        elif keyword == "gen":
            if degree is None:
                raise GroupFormatError(number, raw, "generator before degree")
            try:
                gens.append(parse_cycles(rest, degree))
            except ValueError as exc:
                raise GroupFormatError(number, raw, str(exc)) from None
        else:
            raise GroupFormatError(number, raw, f"unknown keyword {keyword!r}")
    if degree is None:
        raise GroupFormatError(0, "", "missing degree line")
    return GroupText(degree=degree, generators=tuple(gens), name=name)


def format_group_text(degree: int, generators: list[Permutation], name: str | None = None) -> str:
    """Render generators in the group text format."""
    lines = []
    if name:
        lines.append(f"# name: {name}")
    lines.append(f"degree {degree}")
    lines.extend(f"gen {format_cycles(g)}" for g in generators)
    return "\n".join(lines) + "\n"


def read_group_file(path: str | Path) -> GroupText:
    """Read and parse a group file."""
    path = Path(path)
    logger.debug("Reading group file %s", path)
    return parse_group_text(path.read_text(encoding="utf-8"))
