"""
Computation caps and their configuration.

Caps are plain values carried in a context variable so that the CLI, the
harness and tests can override them without threading a parameter through
every algorithm.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Iterator, Mapping
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, fields, replace

logger = logging.getLogger(__name__)

ENV_VAR = "CENTRA_CAPS"

# short keys accepted in CENTRA_CAPS
_KEYS = {
    "enum": "enumeration",
    "quot": "quotient",
    "filter": "filter_limit",
    "lattice": "lattice_nodes",
    "chain": "exact_chain",
    "iso": "isomorphism",
    "brute": "brute_components",
    "dfs": "dfs_oracle_nodes",
}


@dataclass(frozen=True)
class Caps:
    """Size limits consulted by the algorithms.

    Attributes:
        enumeration: Largest group whose elements may be listed.
        quotient: Largest index of a regular quotient representation.
        filter_limit: Groups up to this order use element filtering for
            centralizers and normalizers; larger ones use backtrack search.
        lattice_nodes: Largest centralizer lattice that may be built.
        exact_chain: Largest group searched exactly for subgroup chains.
        isomorphism: Largest groups compared by isomorphism search.
        brute_components: Largest group searched exhaustively for components.
        dfs_oracle_nodes: Largest lattice checked by exhaustive DFS.
    """

    enumeration: int = 100_000
    quotient: int = 20_000
    filter_limit: int = 10_000
    lattice_nodes: int = 50_000
    exact_chain: int = 2_000
    isomorphism: int = 512
    brute_components: int = 2_000
    dfs_oracle_nodes: int = 200

    @classmethod
    def parse(cls, text: str, base: Caps | None = None) -> Caps:
        """Parse a ``key=value,key=value`` override string.

        Args:
            text: Overrides such as ``"enum=100000,quot=20000"``
            base: Caps to start from (defaults to the built-in values)

        Returns:
            A new Caps instance

        Raises:
            ValueError: On unknown keys or non-positive values

        Example:
            >>> Caps.parse("enum=5000").enumeration
            5000
        """
        caps = base or cls()
        overrides: dict[str, int] = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep:
                raise ValueError(f"Expected key=value in {ENV_VAR}, got {item!r}")
            field_name = _KEYS.get(key, key)
            if field_name not in {f.name for f in fields(cls)}:
                raise ValueError(f"Unknown cap {key!r}")
            number = int(value)
            if number <= 0:
                raise ValueError(f"Cap {key!r} must be positive, got {number}")
            overrides[field_name] = number
        return replace(caps, **overrides)

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> Caps:
        """Build caps from the ``CENTRA_CAPS`` environment variable."""
        env = os.environ if environ is None else environ
        text = env.get(ENV_VAR, "")
        if text:
            logger.debug("Applying %s=%s", ENV_VAR, text)
        return cls.parse(text)


_active: ContextVar[Caps | None] = ContextVar("centra_caps", default=None)


def active_caps() -> Caps:
    """Return the caps in force for the current context."""
    caps = _active.get()
    if caps is None:
        caps = Caps.from_env()
        _active.set(caps)
    return caps


@contextmanager
def use_caps(caps: Caps) -> Iterator[Caps]:
    """Temporarily replace the active caps.

    Example:
        >>> with use_caps(Caps(enumeration=10)):
        ...     active_caps().enumeration
        10
    """
    token = _active.set(caps)
    try:
        yield caps
    finally:
        _active.reset(token)
