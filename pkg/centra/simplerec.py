"""
Composition series, recognition of simple factors, and the invariant lambda.

Nonabelian simple factors are recognized from a checked-in table keyed by
order (``centra/data/simple_groups.txt``). Only order 20160 is shared by two
groups below 10^6; there A8 is told apart from PSL(3,4) by having an element
of order 15.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

from sortedcontainers import SortedDict
from sympy import isprime

from .cdim import cdim
from .exceptions import GroupFormatError, NotSimpleError, UnrecognizedFactorError
from .permcore import GroupHandle, SubgroupRef, quotient_or_self
from .report import CheckReport, Status
from .subgrp import is_simple, minimal_normal_subgroups, normal_subgroups

logger = logging.getLogger(__name__)

STRATEGIES = ("minimal-normal", "maximal-normal")


class FactorKind(Enum):
    CYCLIC = "cyclic"
    ALTERNATING = "alternating"
    LIE = "lie"
    SPORADIC = "sporadic"


_LIE_NAMES = {
    "A": lambda r, q: f"PSL({r + 1},{q})",
    "2A": lambda r, q: f"PSU({r + 1},{q})",
    "B": lambda r, q: f"O({2 * r + 1},{q})",
    "C": lambda r, q: f"PSp({2 * r},{q})",
    "2B": lambda r, q: f"Sz({q})",
    "G": lambda r, q: f"G2({q})",
}


@dataclass(frozen=True)
class SimpleFactorId:
    """Identification of a simple group.

    ``params`` is ``(p,)`` for cyclic, ``(n,)`` for alternating,
    ``(family, rank, q)`` for Lie type and ``(name,)`` for sporadic groups.
    """

    kind: FactorKind
    params: tuple[Any, ...]
    order: int
    lambda_value: int

    @property
    def name(self) -> str:
        if self.kind is FactorKind.CYCLIC:
            return f"C{self.params[0]}"
        if self.kind is FactorKind.ALTERNATING:
            return f"A{self.params[0]}"
        if self.kind is FactorKind.LIE:
            family, rank, q = self.params
            return str(_LIE_NAMES[family](rank, q))
        return str(self.params[0])

    @property
    def is_abelian(self) -> bool:
        return self.kind is FactorKind.CYCLIC

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "params": list(self.params),
            "order": self.order,
            "lambda": self.lambda_value,
            "name": self.name,
        }


def cyclic_factor(p: int) -> SimpleFactorId:
    return SimpleFactorId(FactorKind.CYCLIC, (p,), p, 0)


def _parse_record(tokens: list[str]) -> tuple[FactorKind, tuple[Any, ...]]:
    kind = FactorKind(tokens[0])
    rest = tokens[1:]
    if kind is FactorKind.ALTERNATING:
        return kind, (int(rest[0]),)
    if kind is FactorKind.LIE:
        return kind, (rest[0], int(rest[1]), int(rest[2]))
    if kind is FactorKind.SPORADIC:
        return kind, (rest[0],)
    raise ValueError("cyclic groups are not table entries")


@dataclass(eq=False)
class RecognitionTable:
    """Order-keyed candidates for nonabelian simple groups."""

    entries: SortedDict = field(default_factory=SortedDict)
    disambiguators: dict[int, tuple[int, FactorKind, tuple[Any, ...]]] = field(
        default_factory=dict
    )
    source: str = "<memory>"

    @classmethod
    def parse(cls, text: str, source: str = "<memory>") -> RecognitionTable:
        """Parse table text (see the data file header for the format).

        Raises:
            GroupFormatError: On malformed lines, with the line number
        """
        table = cls(source=source)
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            try:
                if tokens[0] == "ambig":
                    order, element_order = int(tokens[1]), int(tokens[2])
                    kind, params = _parse_record(tokens[3:])
                    table.disambiguators[order] = (element_order, kind, params)
                    continue
                order = int(tokens[0])
                kind, params = _parse_record(tokens[1:-1])
                lam = int(tokens[-1])
            except (ValueError, IndexError, KeyError) as exc:
                raise GroupFormatError(number, raw, f"bad table record ({exc})") from None
            table.entries.setdefault(order, []).append(SimpleFactorId(kind, params, order, lam))
        return table

    @classmethod
    def load(cls, path: str | Path) -> RecognitionTable:
        path = Path(path)
        logger.debug("Loading recognition table %s", path)
        return cls.parse(path.read_text(encoding="utf-8"), source=str(path))

    def __len__(self) -> int:
        return sum(len(v) for v in self.entries.values())

    def __contains__(self, order: int) -> bool:
        return order in self.entries

    def candidates(self, order: int) -> list[SimpleFactorId]:
        return list(self.entries.get(order, []))

    def lookup(self, order: int, element_orders: set[int] | None = None) -> SimpleFactorId:
        """Entry for a simple group of the given order.

        Args:
            order: Group order
            element_orders: Orders of the group's elements, needed only at
                ambiguous orders

        Raises:
            UnrecognizedFactorError: If no entry (or no rule) decides the order
        """
        found = self.candidates(order)
        if not found:
            raise UnrecognizedFactorError(order)
        if len(found) == 1:
            return found[0]
        rule = self.disambiguators.get(order)
        if rule is None or element_orders is None:
            raise UnrecognizedFactorError(order)
        element_order, kind, params = rule
        named = element_order in element_orders
        for entry in found:
            if (entry.kind is kind and entry.params == params) == named:
                return entry
        raise UnrecognizedFactorError(order)


@lru_cache(maxsize=1)
def default_table() -> RecognitionTable:
    """The table shipped with the package."""
    text = resources.files("centra").joinpath("data/simple_groups.txt").read_text("utf-8")
    return RecognitionTable.parse(text, source="centra/data/simple_groups.txt")


_table_var: ContextVar[RecognitionTable | None] = ContextVar("centra_table", default=None)


def active_table() -> RecognitionTable:
    return _table_var.get() or default_table()


@contextmanager
def use_table(table: RecognitionTable) -> Iterator[RecognitionTable]:
    """Temporarily recognize simple groups with another table."""
    token = _table_var.set(table)
    try:
        yield table
    finally:
        _table_var.reset(token)


def _identify(G: GroupHandle) -> SimpleFactorId:
    order = G.order()
    if isprime(order):
        return cyclic_factor(order)
    table = active_table()
    orders = None
    if len(table.candidates(order)) > 1:
        orders = {int(x) for x in set(G.table().element_orders.tolist())}
    return table.lookup(order, orders)


def identify_simple(G: GroupHandle) -> SimpleFactorId:
    """Identify a simple group by order and, if needed, element orders.

    Example:
        >>> from centra.corpus import make_alternating
        >>> identify_simple(make_alternating(5)).lambda_value
        1

    Raises:
        NotSimpleError: If G is not simple
        UnrecognizedFactorError: If the order is not in the table
    """
    if not is_simple(G):
        raise NotSimpleError(G.order())
    return _identify(G)


def _in(G: GroupHandle, H: SubgroupRef) -> SubgroupRef:
    return SubgroupRef(G, H.generators, _check=False)


def _series_minimal_first(G: GroupHandle) -> list[SubgroupRef]:
    if G.order() == 1:
        return [SubgroupRef.trivial(G)]
    if is_simple(G):
        return [SubgroupRef.whole(G), SubgroupRef.trivial(G)]
    N = minimal_normal_subgroups(G)[0]
    lower = [_in(G, H) for H in _series_minimal_first(N.as_group())]
    Q, pi = quotient_or_self(G, N)
    upper = [pi.preimage(U) for U in _series_minimal_first(Q)]
    return upper[:-1] + lower


def _series_maximal_first(G: GroupHandle) -> list[SubgroupRef]:
    if G.order() == 1:
        return [SubgroupRef.trivial(G)]
    proper = [N for N in normal_subgroups(G) if N.order() < G.order()]
    M = max(proper, key=lambda N: N.order())
    rest = [_in(G, H) for H in _series_maximal_first(M.as_group())]
    return [SubgroupRef.whole(G), *rest]


def composition_series(G: GroupHandle, strategy: str = "minimal-normal") -> list[SubgroupRef]:
    """A composition series G = G_0 > G_1 > ... > G_r = 1.

    Args:
        G: The group
        strategy: ``"minimal-normal"`` refines through minimal normal
            subgroups; ``"maximal-normal"`` peels off maximal normal ones

    Raises:
        ValueError: On an unknown strategy
        CapExceededError: If a quotient exceeds the quotient cap
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown strategy {strategy!r}")
    build = _series_minimal_first if strategy == "minimal-normal" else _series_maximal_first
    return G.cached(("composition_series", strategy), lambda: build(G))


def composition_factors(G: GroupHandle, strategy: str = "minimal-normal") -> list[SimpleFactorId]:
    """Identified factors G_i/G_{i+1} of a composition series, top first."""

    def compute() -> list[SimpleFactorId]:
        series = composition_series(G, strategy)
        factors = []
        for upper, lower in zip(series, series[1:], strict=False):
            size = upper.order() // lower.order()
            if isprime(size):
                factors.append(cyclic_factor(size))
                continue
            top = G if upper.order() == G.order() else upper.as_group()
            Q, _ = quotient_or_self(top, _in(top, lower))
            factors.append(_identify(Q))
        return factors

    # The key holds the table itself, so its identity cannot be reused while memoized.
    return G.cached(("composition_factors", strategy, active_table()), compute)


def nonabelian_factors(G: GroupHandle) -> list[SimpleFactorId]:
    return [f for f in composition_factors(G) if not f.is_abelian]


def nonabelian_factor_count(G: GroupHandle) -> int:
    """Number of nonabelian composition factors, with multiplicity."""
    if G.order() == 1:
        return 0
    return len(nonabelian_factors(G))


def lambda_invariant(G: GroupHandle) -> int:
    """Sum of lambda over the nonabelian composition factors.

    Raises:
        UnrecognizedFactorError: If a factor is missing from the table
    """
    if G.order() == 1:
        return 0
    return sum(f.lambda_value for f in nonabelian_factors(G))


def check_factor_count(G: GroupHandle, group_name: str = "") -> CheckReport:
    """Nonabelian composition factors < 5 cdim_steps(G).

    Also records lambda(G)/cdim_steps(G) as a data point. When
    cdim_steps(G) = 0 the group is abelian and the check passes vacuously.
    """
    k = cdim(G).value_steps
    count = nonabelian_factor_count(G)
    lam = lambda_invariant(G)
    computed: dict[str, Any] = {"nonabelian_factors": count, "cdim_steps": k, "lambda": lam}
    if k == 0:
        computed["vacuous"] = True
        return CheckReport(
            "factor-count",
            group_name or G.name or "",
            inputs={"order": G.order()},
            computed=computed,
            status=Status.PASS,
            reason="vacuous: cdim_steps = 0",
        )
    computed["lambda_ratio"] = round(lam / k, 6)
    ok = count < 5 * k
    return CheckReport(
        "factor-count",
        group_name or G.name or "",
        inputs={"order": G.order()},
        computed=computed,
        status=Status.PASS if ok else Status.FAIL,
        reason=None if ok else "too many nonabelian composition factors",
        margin=5 * k - count,
    )
