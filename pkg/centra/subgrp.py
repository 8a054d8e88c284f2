"""
Subgroup algorithms: centralizers, normalizers, closures, series and radicals.

Everything here works on enumerable groups through masks over the element
table. Centralizers, normalizers and Sylow subgroups of groups larger than
the filtering limit go through sympy's backtrack search instead.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
from sympy import isprime, primefactors
from sympy.combinatorics import Permutation, PermutationGroup

from .config import active_caps
from .cycles import format_cycles
from .exceptions import (
    InvalidParameterError,
    NotAPrimeError,
    NotInGroupError,
    TrivialGroupError,
)
from .permcore import (
    GroupHandle,
    SubgroupRef,
    conjugacy_classes,
    is_normal,
    perm_to_row,
    quotient_or_self,
)

logger = logging.getLogger(__name__)

__all__ = [
    "SeriesKind",
    "SeriesRecord",
    "center",
    "centralizer",
    "centralizer_by_backtrack",
    "centralizer_by_filter",
    "commutator",
    "derived_length",
    "derived_series",
    "derived_subgroup",
    "fitting",
    "fitting_height",
    "is_nilpotent",
    "is_normal",
    "is_perfect",
    "is_simple",
    "is_soluble",
    "is_subnormal",
    "lower_central_series",
    "minimal_normal_subgroups",
    "normal_closure",
    "normal_subgroups",
    "normalizer",
    "p_core",
    "p_soluble_radical",
    "pi_core",
    "socle",
    "soluble_radical",
    "sylow",
    "upper_fitting_series",
    "upper_fitting_series_terms",
]


class SeriesKind(Enum):
    DERIVED = "derived"
    LOWER_CENTRAL = "lower-central"
    UPPER_FITTING = "upper-fitting"
    P_SERIES = "p-series"


@dataclass(frozen=True)
class SeriesRecord:
    """A chain of subgroups of one ambient group.

    Derived and lower central series descend from the whole group; the upper
    Fitting series ascends from F(G). A stabilized tail is cut to one term.
    """

    terms: list[SubgroupRef]
    kind: SeriesKind

    @property
    def orders(self) -> list[int]:
        return [t.order() for t in self.terms]

    def __len__(self) -> int:
        return len(self.terms)


def _sub(G: GroupHandle, gens: Iterable[Permutation]) -> SubgroupRef:
    return SubgroupRef(G, list(gens), _check=False)


def _require_members(G: GroupHandle, elements: Sequence[Permutation]) -> None:
    for s in elements:
        if not G.contains(s):
            raise NotInGroupError(format_cycles(s))


def commuting_mask(rows: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Mask of the table rows that commute with the row ``s``."""
    return np.all(s[rows] == rows[:, s], axis=1)


def centralizer_by_filter(G: GroupHandle, S: Sequence[Permutation]) -> SubgroupRef:
    """C_G(S) by testing every element of G."""
    _require_members(G, S)
    table = G.table()
    mask = np.ones(table.size, dtype=bool)
    for s in S:
        mask &= commuting_mask(table.rows, perm_to_row(s, G.degree))
    return SubgroupRef.from_mask(G, mask)


def centralizer_by_backtrack(G: GroupHandle, S: Sequence[Permutation]) -> SubgroupRef:
    """C_G(S) by sympy's backtrack search over the stabilizer chain."""
    _require_members(G, S)
    if not S:
        return SubgroupRef.whole(G)
    result = G.certificate().centralizer(PermutationGroup(list(S)))
    return _sub(G, result.generators)


def centralizer(G: GroupHandle, S: Sequence[Permutation]) -> SubgroupRef:
    """Centralizer of a set of elements.

    Args:
        G: Ambient group
        S: Elements of G; an empty list gives G itself

    Raises:
        NotInGroupError: If an element of S is not in G
    """
    if not S:
        _require_members(G, S)
        return SubgroupRef.whole(G)
    if G.order() <= active_caps().filter_limit:
        return centralizer_by_filter(G, S)
    logger.debug("Backtrack centralizer in group of order %d", G.order())
    return centralizer_by_backtrack(G, S)


def center(G: GroupHandle) -> SubgroupRef:
    """Z(G)."""
    return G.cached("center", lambda: centralizer(G, G.generators))


def normalizer_mask(G: GroupHandle, H: SubgroupRef) -> np.ndarray:
    """Mask of the g in G that conjugate every generator of H into H.

    Needs the element table of G.
    """
    table = G.table()
    h_mask = H.mask() if H.ambient is G else _sub(G, H.generators).mask()
    mask = np.ones(table.size, dtype=bool)
    for h in H.generators:
        h_row = perm_to_row(h, G.degree)
        conj = np.take_along_axis(table.rows, h_row[table.inverse_rows].astype(np.intp), axis=1)
        mask &= h_mask[table.lookup(conj)]
    return mask


def normalizer(G: GroupHandle, H: SubgroupRef) -> SubgroupRef:
    """N_G(H) = {g in G : H^g = H}.

    Raises:
        NotInGroupError: If H is not contained in G
    """
    _require_members(G, H.generators)
    if G.order() <= active_caps().filter_limit:
        return SubgroupRef.from_mask(G, normalizer_mask(G, H))
    inner = _sub(G, H.generators)
    found = G.certificate().subgroup_search(
        lambda x: all(inner.contains(h ^ x) for h in inner.generators)
    )
    return _sub(G, found.generators)


def _closure_under(
    G: GroupHandle, seeds: Sequence[Permutation], conjugators: Sequence[Permutation]
) -> SubgroupRef:
    gens = [s for s in seeds if not s.is_Identity]
    H = _sub(G, gens)
    queue = list(gens)
    while queue:
        c = queue.pop()
        for g in conjugators:
            d = c ^ g
            if not H.contains(d):
                gens.append(d)
                H = _sub(G, gens)
                queue.append(d)
    return H


def normal_closure(G: GroupHandle, S: Sequence[Permutation]) -> SubgroupRef:
    """Smallest normal subgroup of G containing S.

    Raises:
        NotInGroupError: If an element of S is not in G
    """
    _require_members(G, S)
    return _closure_under(G, S, G.generators)


def commutator(G: GroupHandle, A: SubgroupRef, B: SubgroupRef) -> SubgroupRef:
    """[A, B], the subgroup generated by all commutators a^-1 b^-1 a b."""
    comms = [~a * ~b * a * b for a in A.generators for b in B.generators]
    return _closure_under(G, comms, A.generators + B.generators)


def derived_subgroup(G: GroupHandle, H: SubgroupRef | None = None) -> SubgroupRef:
    """H' = [H, H], with H = G by default."""
    H = SubgroupRef.whole(G) if H is None else H
    return commutator(G, H, H)


def _descending(G: GroupHandle, step: str, kind: SeriesKind) -> SeriesRecord:
    # Stops at 1 or at the first term that repeats.
    whole = SubgroupRef.whole(G)
    terms = [whole]
    while True:
        top = terms[-1]
        nxt = commutator(G, top, top) if step == "derived" else commutator(G, top, whole)
        if nxt.order() == top.order():
            break
        terms.append(nxt)
        if nxt.is_trivial():
            break
    return SeriesRecord(terms, kind)


def derived_series(G: GroupHandle) -> SeriesRecord:
    """G >= G' >= G'' >= ... down to 1 or to the perfect core."""
    return G.cached("derived_series", lambda: _descending(G, "derived", SeriesKind.DERIVED))


def derived_length(G: GroupHandle) -> int | None:
    """Number of strict steps to the trivial group; None if G is not soluble.

    Example:
        >>> from centra.corpus import make_symmetric
        >>> derived_length(make_symmetric(4))
        3
    """
    series = derived_series(G)
    if series.terms[-1].order() != 1:
        return None
    return len(series.terms) - 1


def lower_central_series(G: GroupHandle) -> SeriesRecord:
    """G >= [G, G] >= [G, G, G] >= ..."""
    return G.cached(
        "lower_central_series", lambda: _descending(G, "lower", SeriesKind.LOWER_CENTRAL)
    )


def is_soluble(G: GroupHandle) -> bool:
    return derived_length(G) is not None


def is_nilpotent(G: GroupHandle) -> bool:
    return lower_central_series(G).terms[-1].order() == 1


def is_perfect(G: GroupHandle) -> bool:
    return derived_subgroup(G).order() == G.order()


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise NotAPrimeError(p)


def _p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def sylow(G: GroupHandle, p: int) -> SubgroupRef:
    """A Sylow p-subgroup.

    Grows P by an element x normalizing P with x^p in P until |P| is the
    full p-part of |G|.

    Raises:
        NotAPrimeError: If p is not prime
    """
    _require_prime(p)

    def compute() -> SubgroupRef:
        target = _p_part(G.order(), p)
        if target == 1:
            return SubgroupRef.trivial(G)
        if G.order() > active_caps().filter_limit:
            return _sub(G, G.certificate().sylow_subgroup(p).generators)
        table = G.table()
        P = SubgroupRef.trivial(G)
        while P.order() < target:
            p_mask = P.mask()
            cand = np.flatnonzero(normalizer_mask(G, P) & ~p_mask)
            power = table.rows[cand]
            for _ in range(p - 1):
                power = np.take_along_axis(table.rows[cand], power.astype(np.intp), axis=1)
            good = cand[p_mask[table.lookup(power)]]
            P = _sub(G, [*P.generators, table.perm(int(good[0]))])
        logger.debug("Sylow %d-subgroup of order %d", p, target)
        return P

    return G.cached(("sylow", p), compute)


def _conjugate_mask(G: GroupHandle, mask: np.ndarray, g: Permutation) -> np.ndarray:
    table = G.table()
    out = np.zeros(table.size, dtype=bool)
    out[table.lookup(table.conjugate_rows(table.rows[mask], perm_to_row(g, G.degree)))] = True
    return out


def p_core(G: GroupHandle, p: int) -> SubgroupRef:
    """O_p(G), the intersection of the conjugates of a Sylow p-subgroup.

    Raises:
        NotAPrimeError: If p is not prime
    """
    _require_prime(p)

    def compute() -> SubgroupRef:
        mask = sylow(G, p).mask().copy()
        changed = True
        while changed:
            changed = False
            for g in G.generators:
                meet = mask & _conjugate_mask(G, mask, g)
                if meet.sum() < mask.sum():
                    mask = meet
                    changed = True
        return SubgroupRef.from_mask(G, mask)

    return G.cached(("p_core", p), compute)


def fitting(G: GroupHandle) -> SubgroupRef:
    """F(G), the product of the p-cores."""

    def compute() -> SubgroupRef:
        cores = [p_core(G, p) for p in primefactors(G.order())]
        cores = [c for c in cores if not c.is_trivial()]
        if not cores:
            return SubgroupRef.trivial(G)
        return cores[0].join(*cores[1:])

    return G.cached("fitting", compute)


def upper_fitting_series_terms(G: GroupHandle) -> SeriesRecord:
    """F_1 = F(G) < F_2 < ... until the series stops growing.

    Raises:
        CapExceededError: If a quotient G/F_i exceeds the quotient cap
    """

    def compute() -> SeriesRecord:
        terms = [fitting(G)]
        while terms[-1].order() < G.order():
            Q, pi = quotient_or_self(G, terms[-1])
            F = fitting(Q)
            if F.is_trivial():
                break
            terms.append(pi.preimage(F))
        return SeriesRecord(terms, SeriesKind.UPPER_FITTING)

    return G.cached("upper_fitting", compute)


def upper_fitting_series(G: GroupHandle, i: int) -> SubgroupRef:
    """F_i(G).

    Raises:
        InvalidParameterError: If i < 1
    """
    if i < 1:
        raise InvalidParameterError("i", i, "must be at least 1")
    terms = upper_fitting_series_terms(G).terms
    return terms[min(i, len(terms)) - 1]


def fitting_height(G: GroupHandle) -> int | None:
    """Smallest h with F_h(G) = G; None when G is not soluble."""
    if G.order() == 1:
        return 0
    terms = upper_fitting_series_terms(G).terms
    if terms[-1].order() != G.order():
        return None
    return len(terms)


def soluble_radical(G: GroupHandle) -> SubgroupRef:
    """R(G), grown as R <- preimage of F(G/R) until F(G/R) = 1."""

    def compute() -> SubgroupRef:
        R = SubgroupRef.trivial(G)
        while True:
            Q, pi = quotient_or_self(G, R)
            F = fitting(Q)
            if F.is_trivial():
                return R
            R = pi.preimage(F)

    return G.cached("soluble_radical", compute)


def _is_pi_number(n: int, primes: frozenset[int], complement: bool) -> bool:
    return all((q in primes) != complement for q in primefactors(n))


def pi_core(G: GroupHandle, primes: Iterable[int], *, complement: bool = False) -> SubgroupRef:
    """O_pi(G), or O_pi'(G) with ``complement=True``.

    Built by stacking minimal normal pi-subgroups of successive quotients.
    """
    prime_set = frozenset(primes)
    for p in prime_set:
        _require_prime(p)

    def compute() -> SubgroupRef:
        K = SubgroupRef.trivial(G)
        while K.order() < G.order():
            Q, pi = quotient_or_self(G, K)
            found = [
                M
                for M in minimal_normal_subgroups(Q)
                if _is_pi_number(M.order(), prime_set, complement)
            ]
            if not found:
                break
            K = pi.preimage(found[0].join(*found[1:]))
        return K

    return G.cached(("pi_core", prime_set, complement), compute)


def p_soluble_radical(G: GroupHandle, p: int) -> SubgroupRef:
    """S_p(G), the top of 1 <= O_p' <= O_p',p <= O_p',p,p' <= ...

    Raises:
        NotAPrimeError: If p is not prime
    """
    _require_prime(p)

    def compute() -> SubgroupRef:
        K = SubgroupRef.trivial(G)
        while K.order() < G.order():
            Q, pi = quotient_or_self(G, K)
            step = pi_core(Q, [p], complement=True)
            if step.is_trivial():
                step = p_core(Q, p)
            if step.is_trivial():
                break
            K = pi.preimage(step)
        return K

    return G.cached(("p_soluble_radical", p), compute)


def _distinct_closures(G: GroupHandle) -> list[SubgroupRef]:
    # One normal closure per nontrivial class, duplicates removed, smallest first.
    table = G.table()
    seen: dict[bytes, SubgroupRef] = {}
    for rep in conjugacy_classes(G).reps:
        if rep == table.identity:
            continue
        N = normal_closure(G, [table.perm(int(rep))])
        seen.setdefault(np.packbits(N.mask()).tobytes(), N)
    return sorted(seen.values(), key=lambda N: N.order())


def minimal_normal_subgroups(G: GroupHandle) -> list[SubgroupRef]:
    """The minimal nontrivial normal subgroups, smallest first.

    Raises:
        TrivialGroupError: If G is trivial
    """
    if G.order() == 1:
        raise TrivialGroupError("minimal_normal_subgroups")

    def compute() -> list[SubgroupRef]:
        closures = _distinct_closures(G)
        minimal = []
        for N in closures:
            mask = N.mask()
            if not any(M.order() < N.order() and not np.any(M.mask() & ~mask) for M in minimal):
                minimal.append(N)
        return minimal

    return G.cached("minimal_normal_subgroups", compute)


def socle(G: GroupHandle) -> SubgroupRef:
    """Product of the minimal normal subgroups.

    Raises:
        TrivialGroupError: If G is trivial
    """
    mins = minimal_normal_subgroups(G)
    return mins[0].join(*mins[1:])


def is_simple(G: GroupHandle) -> bool:
    """Nontrivial with no normal subgroups but 1 and G."""
    if G.order() == 1:
        return False
    mins = minimal_normal_subgroups(G)
    return len(mins) == 1 and mins[0].order() == G.order()


def normal_subgroups(G: GroupHandle) -> list[SubgroupRef]:
    """Every normal subgroup, as joins of normal closures of classes."""

    def compute() -> list[SubgroupRef]:
        if G.order() == 1:
            return [SubgroupRef.trivial(G)]
        closures = _distinct_closures(G)
        found: dict[bytes, SubgroupRef] = {}
        trivial = SubgroupRef.trivial(G)
        found[np.packbits(trivial.mask()).tobytes()] = trivial
        frontier = [trivial]
        while frontier:
            fresh = []
            for N in frontier:
                for C in closures:
                    if not np.any(C.mask() & ~N.mask()):
                        continue
                    J = N.join(C)
                    key = np.packbits(J.mask()).tobytes()
                    if key not in found:
                        found[key] = J
                        fresh.append(J)
            frontier = fresh
        return sorted(found.values(), key=lambda N: (N.order(), np.packbits(N.mask()).tobytes()))

    return G.cached("normal_subgroups", compute)


def is_subnormal(G: GroupHandle, H: SubgroupRef) -> bool:
    """True iff the chain of successive normal closures of H reaches H."""
    K = SubgroupRef.whole(G)
    while True:
        K_group = K.as_group()
        L = normal_closure(K_group, H.generators)
        if L.order() == H.order():
            return True
        if L.order() == K.order():
            return False
        K = _sub(G, L.generators)
