"""
Permutation groups: handles, element tables, subgroups, homomorphisms.

Permutations are sympy ``Permutation`` objects and compose left to right:
``x * y`` applies ``x`` first. A ``GroupHandle`` keeps its generators and two
lazily built certificates: sympy's stabilizer chain (order and membership
without listing elements) and an ``ElementTable`` listing every element as a
row of a numpy array, which the enumeration-scale algorithms work on.
"""

from __future__ import annotations

import logging
import threading
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from typing import Any, TypeVar

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup

from .config import active_caps
from .cycles import format_cycles, identity_permutation
from .exceptions import (
    CapExceededError,
    DegreeMismatchError,
    NotAHomomorphismError,
    NotInGroupError,
    NotNormalError,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")

_HASH_SEED = 0x5EED_CE47


def _row_dtype(degree: int) -> type[np.signedinteger[Any]]:
    return np.int16 if degree < 2**15 else np.int32


def perm_to_row(perm: Permutation, degree: int) -> np.ndarray:
    """Image table of a permutation as a numpy row (0-based)."""
    return np.asarray(perm.array_form, dtype=_row_dtype(degree))


def row_to_perm(row: np.ndarray) -> Permutation:
    """Inverse of :func:`perm_to_row`."""
    return Permutation([int(x) for x in row])


class ElementTable:
    """Every element of a group, one per row, with vectorized lookup.

    Rows are image tables, so the product ``x * g`` of rows ``x`` and ``g``
    is ``g[x]`` and conjugation ``g^-1 * x * g`` is ``g[x[g^-1]]``.
    """

    def __init__(self, rows: np.ndarray) -> None:
        self.rows = rows
        self.size, self.degree = rows.shape
        rng = np.random.default_rng(_HASH_SEED + self.degree)
        self._weights = rng.integers(1, 2**62, size=self.degree, dtype=np.uint64)
        keys = self._keys(rows)
        self._order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._order]
        self._fallback: dict[bytes, int] | None = None
        if self.size > 1 and np.any(self._sorted_keys[1:] == self._sorted_keys[:-1]):
            self._fallback = {row.tobytes(): i for i, row in enumerate(rows)}
        self.identity = int(self.lookup(np.arange(self.degree, dtype=rows.dtype)[None, :])[0])
        self._inverse_rows: np.ndarray | None = None
        self._inverse_index: np.ndarray | None = None
        self._element_orders: np.ndarray | None = None

    def _keys(self, rows: np.ndarray) -> np.ndarray:
        return rows.astype(np.uint64) @ self._weights

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Indices of the given rows; -1 for rows that are not elements."""
        rows = np.asarray(rows, dtype=self.rows.dtype).reshape(-1, self.degree)
        if rows.shape[0] == 0:
            return np.empty(0, dtype=np.intp)
        keys = self._keys(rows)
        pos = np.minimum(np.searchsorted(self._sorted_keys, keys), self.size - 1)
        idx = self._order[pos]
        ok = (self._sorted_keys[pos] == keys) & np.all(self.rows[idx] == rows, axis=1)
        result = np.where(ok, idx, -1)
        if self._fallback is not None and not ok.all():
            for i in np.flatnonzero(~ok):
                result[i] = self._fallback.get(rows[i].tobytes(), -1)
        return result

    def index_of(self, perm: Permutation) -> int:
        """Index of a permutation, or -1 when it is not an element."""
        if perm.size != self.degree:
            return -1
        return int(self.lookup(perm_to_row(perm, self.degree)[None, :])[0])

    def perm(self, index: int) -> Permutation:
        return row_to_perm(self.rows[index])

    @property
    def inverse_rows(self) -> np.ndarray:
        if self._inverse_rows is None:
            self._inverse_rows = np.argsort(self.rows, axis=1).astype(self.rows.dtype)
        return self._inverse_rows

    @property
    def inverse_index(self) -> np.ndarray:
        """Index of x^-1 for every element x."""
        if self._inverse_index is None:
            self._inverse_index = self.lookup(self.inverse_rows)
        return self._inverse_index

    @property
    def element_orders(self) -> np.ndarray:
        """Order of every element."""
        if self._element_orders is None:
            ident = np.arange(self.degree, dtype=self.rows.dtype)
            orders = np.ones(self.size, dtype=np.int64)
            power = self.rows.copy()
            pending = np.flatnonzero(~np.all(power == ident, axis=1))
            exponent = 1
            while pending.size:
                exponent += 1
                power[pending] = np.take_along_axis(
                    self.rows[pending], power[pending].astype(np.intp), axis=1
                )
                done = np.all(power[pending] == ident, axis=1)
                orders[pending[done]] = exponent
                pending = pending[~done]
            self._element_orders = orders
        return self._element_orders

    def multiply(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Row-wise products ``left[i] * right[i]`` (or broadcast a single row)."""
        left = np.atleast_2d(left)
        right = np.atleast_2d(right)
        if right.shape[0] == 1:
            return right[0][left]
        return np.take_along_axis(right, left.astype(np.intp), axis=1)

    def conjugate_rows(self, rows: np.ndarray, by: np.ndarray) -> np.ndarray:
        """``by^-1 * x * by`` for every row ``x``."""
        by_inv = np.argsort(by)
        return by[rows[:, by_inv]]

    def conjugate_indices(self, indices: np.ndarray, by: int) -> np.ndarray:
        """Indices of ``x^by`` for the elements at ``indices``."""
        return self.lookup(self.conjugate_rows(self.rows[indices], self.rows[by]))

    def closure(self, generators: Sequence[int]) -> np.ndarray:
        """Mask of the subgroup generated by the given element indices."""
        mask = np.zeros(self.size, dtype=bool)
        mask[self.identity] = True
        gen_rows = [self.rows[g] for g in generators if g != self.identity]
        frontier = np.array([self.identity], dtype=np.intp)
        while frontier.size and gen_rows:
            base = self.rows[frontier]
            found = np.concatenate([self.lookup(g[base]) for g in gen_rows])
            found = np.unique(found)
            found = found[~mask[found]]
            mask[found] = True
            frontier = found
        return mask

    def generators_of(self, mask: np.ndarray) -> list[int]:
        """A small generating set of the subgroup given by ``mask``.

        Elements of large order are tried first so that cyclic and
        two-generated groups come out with one or two generators.
        """
        target = int(mask.sum())
        members = np.flatnonzero(mask)
        orders = self.element_orders[members]
        ranked = members[np.lexsort((members, -orders))]
        gens: list[int] = []
        current = np.zeros(self.size, dtype=bool)
        current[self.identity] = True
        for idx in ranked:
            if int(current.sum()) == target:
                break
            if current[idx]:
                continue
            gens.append(int(idx))
            current = self.closure(gens)
        return gens


def _enumerate_rows(degree: int, generators: Sequence[Permutation]) -> np.ndarray:
    dtype = _row_dtype(degree)
    identity = np.arange(degree, dtype=dtype)
    gen_rows = [perm_to_row(g, degree) for g in generators]
    gen_rows = [g for g in gen_rows if not np.array_equal(g, identity)]
    rows = [identity]
    seen = {identity.tobytes()}
    frontier = identity[None, :]
    while frontier.shape[0] and gen_rows:
        fresh = []
        for g in gen_rows:
            for row in g[frontier]:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
        rows.extend(fresh)
        frontier = np.array(fresh, dtype=dtype).reshape(-1, degree)
    return np.array(rows, dtype=dtype).reshape(-1, degree)


class GroupHandle:
    """A finite permutation group given by generators.

    Certificates (sympy stabilizer chain, element table) are computed once on
    demand under a lock; afterwards the handle is read-only and can be shared
    between threads.
    """

    def __init__(
        self,
        degree: int,
        generators: Sequence[Permutation] = (),
        *,
        name: str | None = None,
        _table: ElementTable | None = None,
    ) -> None:
        """Create a group handle.

        Args:
            degree: Number of points (positive)
            generators: Permutations of size ``degree``
            name: Optional display name

        Raises:
            DegreeMismatchError: If degree is 0 or a generator has another size
        """
        if degree <= 0:
            raise DegreeMismatchError(1, degree)
        for gen in generators:
            if gen.size != degree:
                raise DegreeMismatchError(degree, gen.size)
        self._degree = degree
        self._generators = tuple(generators)
        self.name = name
        self._lock = threading.RLock()
        self._certificate: PermutationGroup | None = None
        self._table = _table
        self._memo: dict[Any, Any] = {}

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self._generators

    def __repr__(self) -> str:
        label = self.name or "group"
        gens = ", ".join(format_cycles(g) for g in self._generators)
        return f"GroupHandle({label}, degree={self._degree}, gens=[{gens}])"

    def identity(self) -> Permutation:
        return identity_permutation(self._degree)

    def certificate(self) -> PermutationGroup:
        """The sympy group with its base and strong generating set built."""
        with self._lock:
            if self._certificate is None:
                gens = list(self._generators) or [self.identity()]
                group = PermutationGroup(gens)
                group.schreier_sims()
                self._certificate = group
                logger.debug(
                    "Stabilizer chain for %s: base length %d", self, len(group.base)
                )
            return self._certificate

    def order(self) -> int:
        """Number of elements."""
        if self._table is not None:
            return self._table.size
        return int(self.certificate().order())

    def has_table(self) -> bool:
        """Whether the elements are already enumerated."""
        return self._table is not None

    def table(self) -> ElementTable:
        """Element table, enumerated on first use.

        Raises:
            CapExceededError: If the order exceeds the enumeration cap
        """
        with self._lock:
            if self._table is None:
                cap = active_caps().enumeration
                size = self.order()
                if size > cap:
                    raise CapExceededError("enumeration", cap, size)
                rows = _enumerate_rows(self._degree, self._generators)
                self._table = ElementTable(rows)
                logger.debug("Enumerated %d elements of %s", size, self.name or "group")
            return self._table

    def contains(self, perm: Permutation) -> bool:
        """Membership test."""
        if perm.size != self._degree:
            return False
        if self._table is not None:
            return self._table.index_of(perm) >= 0
        return bool(self.certificate().contains(perm))

    def elements(self) -> Iterator[Permutation]:
        """Each element exactly once, identity first.

        Raises:
            CapExceededError: If the order exceeds the enumeration cap
        """
        table = self.table()
        for i in range(table.size):
            yield table.perm(i)

    def is_trivial(self) -> bool:
        return all(g.is_Identity for g in self._generators)

    def is_abelian(self) -> bool:
        gens = self._generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1 :])

    def element_order(self, perm: Permutation) -> int:
        """Order of an element of this group."""
        if not self.contains(perm):
            raise NotInGroupError(format_cycles(perm))
        return int(perm.order())

    def cached(self, key: Any, compute: Callable[[], T]) -> T:
        """Memoize a derived invariant on this handle."""
        with self._lock:
            if key in self._memo:
                return self._memo[key]  # type: ignore[no-any-return]
        value = compute()
        with self._lock:
            return self._memo.setdefault(key, value)  # type: ignore[no-any-return]


def group_from_generators(
    degree: int, gens: Sequence[Permutation], name: str | None = None
) -> GroupHandle:
    """Build the subgroup of Sym(degree) generated by ``gens``.

    Example:
        >>> from centra.cycles import parse_cycles
        >>> g = group_from_generators(3, [parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)])
        >>> g.order()
        6
    """
    return GroupHandle(degree, gens, name=name)


class SubgroupRef:
    """A subgroup of an ambient group, given by generators.

    Two references over the same ambient compare equal iff they contain the
    same elements (equal order and mutual generator membership).
    """

    def __init__(
        self,
        ambient: GroupHandle,
        generators: Sequence[Permutation],
        *,
        _mask: np.ndarray | None = None,
        _check: bool = True,
    ) -> None:
        self.ambient = ambient
        self.generators = tuple(g for g in generators if not g.is_Identity)
        if _check and _mask is None:
            for gen in self.generators:
                if not ambient.contains(gen):
                    raise NotInGroupError(format_cycles(gen))
        self._mask = _mask
        self._group: GroupHandle | None = None
        self._order: int | None = None if _mask is None else int(_mask.sum())

    @classmethod
    def from_mask(cls, ambient: GroupHandle, mask: np.ndarray) -> SubgroupRef:
        """Subgroup from a closed mask over the ambient table.

        The mask is trusted to be a subgroup; a small generating set is
        extracted from it.
        """
        table = ambient.table()
        gens = [table.perm(i) for i in table.generators_of(mask)]
        return cls(ambient, gens, _mask=mask)

    @classmethod
    def whole(cls, ambient: GroupHandle) -> SubgroupRef:
        return cls(ambient, ambient.generators, _check=False)

    @classmethod
    def trivial(cls, ambient: GroupHandle) -> SubgroupRef:
        return cls(ambient, ())

    def __repr__(self) -> str:
        gens = ", ".join(format_cycles(g) for g in self.generators)
        return f"SubgroupRef(order={self.order()}, gens=[{gens}])"

    def mask(self) -> np.ndarray:
        """Boolean mask over the ambient element table."""
        if self._mask is None:
            table = self.ambient.table()
            indices = [table.index_of(g) for g in self.generators]
            self._mask = table.closure(indices)
            self._order = int(self._mask.sum())
        return self._mask

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask())

    def order(self) -> int:
        if self._order is None:
            if self.ambient.has_table() or self.ambient.order() <= active_caps().enumeration:
                self.mask()
            else:
                self._order = self.as_group().order()
        assert self._order is not None
        return self._order

    def is_trivial(self) -> bool:
        return not self.generators

    def contains(self, perm: Permutation) -> bool:
        if self._mask is not None or self.ambient.has_table():
            index = self.ambient.table().index_of(perm)
            return index >= 0 and bool(self.mask()[index])
        return self.as_group().contains(perm)

    def is_subgroup_of(self, other: SubgroupRef) -> bool:
        return all(other.contains(g) for g in self.generators)

    def as_group(self, name: str | None = None) -> GroupHandle:
        """This subgroup as a group in its own right (same degree)."""
        if self._group is None:
            table = None
            if self._mask is not None or self.ambient.has_table():
                table = ElementTable(self.ambient.table().rows[self.mask()])
            self._group = GroupHandle(
                self.ambient.degree, self.generators, name=name, _table=table
            )
        return self._group

    def __eq__(self, other: object) -> bool:
        """Equal as sets of elements of the same ambient group."""
        if not isinstance(other, SubgroupRef):
            return NotImplemented
        if self.ambient is not other.ambient:
            return False
        if self._mask is not None and other._mask is not None:
            return bool(np.array_equal(self._mask, other._mask))
        return (
            self.order() == other.order()
            and self.is_subgroup_of(other)
            and other.is_subgroup_of(self)
        )

    def __hash__(self) -> int:
        return hash((id(self.ambient), self.order()))

    def intersection(self, other: SubgroupRef) -> SubgroupRef:
        return SubgroupRef.from_mask(self.ambient, self.mask() & other.mask())

    def join(self, *others: SubgroupRef) -> SubgroupRef:
        """Subgroup generated by this and the other subgroups."""
        gens = list(self.generators)
        for other in others:
            gens.extend(other.generators)
        return SubgroupRef(self.ambient, gens, _check=False)

    def transport(self, ambient: GroupHandle) -> SubgroupRef:
        """The same set of permutations viewed inside another ambient group."""
        return SubgroupRef(ambient, self.generators)


def is_normal(G: GroupHandle, H: SubgroupRef) -> bool:
    """True iff H is normalized by every generator of G."""
    return all(H.contains(h ^ g) for g in G.generators for h in H.generators)


def _extend_to_homomorphism(
    source: ElementTable,
    target: ElementTable,
    source_gens: Sequence[int],
    target_gens: Sequence[int],
) -> np.ndarray | None:
    """Image index of every element of ``<source_gens>``, or None on conflict.

    Walks the Cayley graph breadth first and checks ``f(x*g) = f(x)*f(g)`` on
    every edge, which is exactly the homomorphism condition.
    """
    image = np.full(source.size, -1, dtype=np.intp)
    image[source.identity] = target.identity
    pairs = [
        (source.rows[s], target.rows[t]) for s, t in zip(source_gens, target_gens, strict=True)
    ]
    frontier = np.array([source.identity], dtype=np.intp)
    while frontier.size:
        fresh = []
        for s_row, t_row in pairs:
            s_next = source.lookup(s_row[source.rows[frontier]])
            t_next = target.lookup(t_row[target.rows[image[frontier]]])
            known = image[s_next] >= 0
            if np.any(image[s_next[known]] != t_next[known]):
                return None
            new = s_next[~known]
            image[new] = t_next[~known]
            if np.any(image[new] != t_next[~known]):
                return None
            fresh.append(new)
        frontier = np.unique(np.concatenate(fresh)) if fresh else np.empty(0, dtype=np.intp)
    return image


class Homomorphism:
    """A homomorphism between two enumerable groups.

    Stored as an image table: source element index to target element index.
    """

    def __init__(
        self, source: GroupHandle, target: GroupHandle, image_index: np.ndarray
    ) -> None:
        self.source = source
        self.target = target
        self.image_index = image_index

    @classmethod
    def from_generator_images(
        cls,
        source: GroupHandle,
        target: GroupHandle,
        images: Sequence[Permutation],
    ) -> Homomorphism:
        """Extend an assignment of the source generators.

        Raises:
            NotAHomomorphismError: If the assignment does not extend
        """
        if len(images) != len(source.generators):
            raise NotAHomomorphismError("one image per source generator is required")
        s_table = source.table()
        t_table = target.table()
        s_gens = [s_table.index_of(g) for g in source.generators]
        t_gens = [t_table.index_of(g) for g in images]
        if any(t < 0 for t in t_gens):
            raise NotAHomomorphismError("an image is not in the target group")
        image = _extend_to_homomorphism(s_table, t_table, s_gens, t_gens)
        if image is None:
            raise NotAHomomorphismError("relation violated on the Cayley graph")
        return cls(source, target, image)

    @classmethod
    def identity(cls, group: GroupHandle) -> Homomorphism:
        return cls(group, group, np.arange(group.table().size, dtype=np.intp))

    @property
    def images(self) -> dict[Permutation, Permutation]:
        """Images of the source generators."""
        return {g: self.image_of(g) for g in self.source.generators}

    def image_of(self, perm: Permutation) -> Permutation:
        index = self.source.table().index_of(perm)
        if index < 0:
            raise NotInGroupError(format_cycles(perm))
        return self.target.table().perm(int(self.image_index[index]))

    def image(self, H: SubgroupRef) -> SubgroupRef:
        """Image of a subgroup of the source."""
        mask = np.zeros(self.target.table().size, dtype=bool)
        mask[self.image_index[H.indices()]] = True
        gens = [self.image_of(g) for g in H.generators]
        return SubgroupRef(self.target, gens, _mask=mask)

    def preimage(self, K: SubgroupRef) -> SubgroupRef:
        """Full preimage of a subgroup of the target."""
        return SubgroupRef.from_mask(self.source, K.mask()[self.image_index])

    def kernel(self) -> SubgroupRef:
        """Preimage of the identity."""
        return self.preimage(SubgroupRef.trivial(self.target))

    def is_injective(self) -> bool:
        return np.unique(self.image_index).size == self.image_index.size


def quotient(G: GroupHandle, N: SubgroupRef) -> tuple[GroupHandle, Homomorphism]:
    """Regular permutation representation of G/N on the right cosets of N.

    Returns:
        The quotient group (degree [G:N]) and the canonical projection

    Raises:
        NotNormalError: If N is not normal in G
        CapExceededError: If the index exceeds the quotient cap
    """
    if not is_normal(G, N):
        raise NotNormalError(N.order(), G.order())
    index = G.order() // N.order()
    cap = active_caps().quotient
    if index > cap:
        raise CapExceededError("quotient", cap, index)
    table = G.table()
    n_rows = table.rows[N.mask()]
    coset_of = np.full(table.size, -1, dtype=np.intp)
    reps: list[int] = []
    order = [table.identity] + [i for i in range(table.size) if i != table.identity]
    for i in order:
        if coset_of[i] >= 0:
            continue
        coset_of[table.lookup(table.rows[i][n_rows])] = len(reps)
        reps.append(i)
    rep_rows = table.rows[reps]
    dtype = _row_dtype(index)
    gens = []
    for g in G.generators:
        action = coset_of[table.lookup(perm_to_row(g, G.degree)[rep_rows])]
        gens.append(Permutation([int(x) for x in action.astype(dtype)]))
    label = f"{G.name or 'G'}/N" if N.order() > 1 else G.name
    Q = GroupHandle(index, gens, name=label)
    q_table = Q.table()
    by_coset = np.empty(index, dtype=np.intp)
    by_coset[q_table.rows[:, 0].astype(np.intp)] = np.arange(index, dtype=np.intp)
    logger.debug("Quotient of order %d by normal subgroup of order %d", index, N.order())
    return Q, Homomorphism(G, Q, by_coset[coset_of])


def quotient_or_self(G: GroupHandle, N: SubgroupRef) -> tuple[GroupHandle, Homomorphism]:
    """Like :func:`quotient`, but the identity map when N is trivial."""
    if N.is_trivial():
        return G, Homomorphism.identity(G)
    return quotient(G, N)


def direct_product(G: GroupHandle, H: GroupHandle) -> GroupHandle:
    """External direct product acting on the disjoint union of the point sets."""
    dg, dh = G.degree, H.degree
    gens = [Permutation(list(g.array_form) + list(range(dg, dg + dh))) for g in G.generators]
    gens += [Permutation(list(range(dg)) + [dg + x for x in h.array_form]) for h in H.generators]
    name = f"{G.name}x{H.name}" if G.name and H.name else None
    return GroupHandle(dg + dh, gens, name=name)


@dataclass(frozen=True)
class ConjugacyClasses:
    """Conjugacy classes of an enumerated group.

    Attributes:
        reps: Representative element index per class (smallest index)
        class_of: Class number of every element
        conjugator: For every element x, an element t with ``rep^t = x``
    """

    reps: np.ndarray
    class_of: np.ndarray
    conjugator: np.ndarray

    def members(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == k)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.class_of, minlength=len(self.reps))


def conjugacy_classes(G: GroupHandle) -> ConjugacyClasses:
    """Orbits of G on itself under conjugation."""

    def compute() -> ConjugacyClasses:
        table = G.table()
        size = table.size
        class_of = np.full(size, -1, dtype=np.intp)
        conjugator = np.full(size, table.identity, dtype=np.intp)
        if G.is_abelian():
            return ConjugacyClasses(np.arange(size), np.arange(size), conjugator)
        gen_rows = [perm_to_row(g, G.degree) for g in G.generators]
        reps: list[int] = []
        for start in range(size):
            if class_of[start] >= 0:
                continue
            k = len(reps)
            reps.append(start)
            class_of[start] = k
            conjugator[start] = table.identity
            frontier = np.array([start], dtype=np.intp)
            while frontier.size:
                fresh = []
                for g in gen_rows:
                    conj = table.lookup(table.conjugate_rows(table.rows[frontier], g))
                    new_mask = class_of[conj] < 0
                    new = conj[new_mask]
                    new, first = np.unique(new, return_index=True)
                    if not new.size:
                        continue
                    class_of[new] = k
                    words = conjugator[frontier[new_mask][first]]
                    conjugator[new] = table.lookup(g[table.rows[words]])
                    fresh.append(new)
                frontier = np.concatenate(fresh) if fresh else np.empty(0, dtype=np.intp)
        return ConjugacyClasses(np.array(reps, dtype=np.intp), class_of, conjugator)

    return G.cached("conjugacy_classes", compute)


def conjugacy_class_reps(G: GroupHandle) -> list[Permutation]:
    """One representative per conjugacy class.

    Raises:
        CapExceededError: If G cannot be enumerated
    """
    table = G.table()
    return [table.perm(int(i)) for i in conjugacy_classes(G).reps]


def _invariant_profile(G: GroupHandle) -> list[tuple[int, int]]:
    # (element order, class size) per class; equal for isomorphic groups.
    classes = conjugacy_classes(G)
    orders = G.table().element_orders
    sizes = classes.sizes()
    return sorted(
        (int(orders[r]), int(sizes[k])) for k, r in enumerate(classes.reps)
    )


def is_isomorphic_small(G: GroupHandle, H: GroupHandle) -> bool:
    """Isomorphism test by backtracking over generator images.

    Generator images are restricted to elements with matching element order
    and class size, and the first image to one element per class.

    Raises:
        CapExceededError: If either group exceeds the isomorphism cap
    """
    cap = active_caps().isomorphism
    for group in (G, H):
        if group.order() > cap:
            raise CapExceededError("isomorphism", cap, group.order())
    if G.order() != H.order():
        return False
    if G.is_abelian() != H.is_abelian():
        return False
    if _invariant_profile(G) != _invariant_profile(H):
        return False
    g_table, h_table = G.table(), H.table()
    if g_table.size == 1:
        return True
    whole = np.ones(g_table.size, dtype=bool)
    src_gens = g_table.generators_of(whole)
    g_classes, h_classes = conjugacy_classes(G), conjugacy_classes(H)
    g_sizes, h_sizes = g_classes.sizes(), h_classes.sizes()
    h_orders = h_table.element_orders
    h_class_size = h_sizes[h_classes.class_of]
    candidates = []
    for depth, s in enumerate(src_gens):
        wanted = (int(g_table.element_orders[s]), int(g_sizes[g_classes.class_of[s]]))
        match = np.flatnonzero((h_orders == wanted[0]) & (h_class_size == wanted[1]))
        if depth == 0:
            match = np.intersect1d(match, h_classes.reps)
        candidates.append(match)

    def search(chosen: list[int]) -> bool:
        depth = len(chosen)
        if depth == len(src_gens):
            image = _extend_to_homomorphism(g_table, h_table, src_gens, chosen)
            return image is not None and np.unique(image).size == h_table.size
        for cand in candidates[depth]:
            trial = [*chosen, int(cand)]
            if _extend_to_homomorphism(g_table, h_table, src_gens[: depth + 1], trial) is None:
                continue
            if search(trial):
                return True
        return False

    return search([])
