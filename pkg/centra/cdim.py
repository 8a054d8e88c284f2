"""
Centralizer lattices, c-dimension, witness chains and subgroup-chain length.

Subgroups of the ambient group are handled here as bitsets over its element
table, packed into ``uint64`` words, so that intersections and inclusion
tests of many centralizers at once are single numpy operations.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np
from sympy import factorint
from sympy.combinatorics import Permutation

from .config import active_caps
from .cycles import format_cycles
from .exceptions import CapExceededError, MalformedResultError, NotInGroupError, NotNormalError
from .permcore import (
    GroupHandle,
    SubgroupRef,
    conjugacy_classes,
    is_normal,
    quotient_or_self,
)
from .report import CheckReport, verdict
from .subgrp import (
    centralizer,
    commuting_mask,
    is_soluble,
    minimal_normal_subgroups,
    normalizer_mask,
)

logger = logging.getLogger(__name__)


def pack_masks(masks: np.ndarray) -> np.ndarray:
    """Pack boolean masks (last axis) into uint64 words."""
    packed = np.packbits(masks, axis=-1)
    pad = (-packed.shape[-1]) % 8
    if pad:
        widths = [(0, 0)] * (packed.ndim - 1) + [(0, pad)]
        packed = np.pad(packed, widths)
    return np.ascontiguousarray(packed).view(np.uint64)


def unpack_words(words: np.ndarray, size: int) -> np.ndarray:
    bits = np.unpackbits(np.ascontiguousarray(words).view(np.uint8), axis=-1)
    return bits[..., :size].astype(bool)


def popcount(words: np.ndarray) -> np.ndarray:
    return np.unpackbits(np.ascontiguousarray(words).view(np.uint8), axis=-1).sum(axis=-1)


def _subset_matrix(rows: np.ndarray) -> np.ndarray:
    """``out[i, j]`` is True iff row i is a subset of row j."""
    return np.all((rows[:, None, :] & ~rows[None, :, :]) == 0, axis=-1)


def element_centralizer_masks(G: GroupHandle) -> np.ndarray:
    """C_G(x) for every element x, as packed words (one row per element).

    Centralizers are computed for class representatives and conjugated to
    the other class members.
    """
    table = G.table()
    classes = conjugacy_classes(G)
    rows = np.zeros((table.size, table.size), dtype=bool) if table.size <= 4096 else None
    words = []
    rep_members: dict[int, np.ndarray] = {}
    for k, rep in enumerate(classes.reps):
        rep_members[k] = np.flatnonzero(commuting_mask(table.rows, table.rows[rep]))
    for x in range(table.size):
        k = int(classes.class_of[x])
        members = rep_members[k]
        if x != classes.reps[k]:
            members = table.conjugate_indices(members, int(classes.conjugator[x]))
        mask = np.zeros(table.size, dtype=bool)
        mask[members] = True
        if rows is not None:
            rows[x] = mask
        else:
            words.append(pack_masks(mask))
    if rows is not None:
        return pack_masks(rows)
    return np.vstack(words)


@dataclass
class CentralizerLattice:
    """All subgroups C_G(S), ordered by inclusion.

    Attributes:
        ambient: The group G
        words: Packed element masks, one row per node; node 0 is G itself
        orders: Order of every node
        defining: For every node, element indices S with node = C_G(S)
        covers: Pairs (a, b) with node a covered by node b
    """

    ambient: GroupHandle
    words: np.ndarray
    orders: np.ndarray
    defining: list[tuple[int, ...]]
    covers: list[tuple[int, int]]
    element_words: np.ndarray = field(repr=False)
    element_reps: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.words.shape[0])

    @property
    def top(self) -> int:
        return 0

    @property
    def bottom(self) -> int:
        return int(np.argmin(self.orders))

    def mask(self, i: int) -> np.ndarray:
        return unpack_words(self.words[i], self.ambient.table().size)

    def node(self, i: int) -> SubgroupRef:
        return SubgroupRef.from_mask(self.ambient, self.mask(i))

    @cached_property
    def nodes(self) -> list[SubgroupRef]:
        return [self.node(i) for i in range(len(self))]

    @cached_property
    def graph(self) -> nx.DiGraph:
        """Cover DAG with edges from each node to the nodes it covers."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self)))
        graph.add_edges_from((b, a) for a, b in self.covers)
        return graph

    def index_of(self, mask: np.ndarray) -> int:
        """Node index of a subgroup mask, or -1."""
        target = pack_masks(mask)
        hits = np.flatnonzero(np.all(self.words == target, axis=1))
        return int(hits[0]) if hits.size else -1


def centralizer_lattice(G: GroupHandle) -> CentralizerLattice:
    """Meet-closure of the element centralizers together with G.

    Raises:
        CapExceededError: If G cannot be enumerated or the lattice grows past
            the lattice cap
    """

    def compute() -> CentralizerLattice:
        table = G.table()
        size = table.size
        top = pack_masks(np.ones(size, dtype=bool))
        if G.is_abelian():
            return CentralizerLattice(
                G,
                top[None, :],
                np.array([size]),
                [()],
                [],
                np.empty((0, top.shape[0]), dtype=np.uint64),
                np.empty(0, dtype=np.intp),
            )
        per_element = element_centralizer_masks(G)
        element_words, first = np.unique(per_element, axis=0, return_index=True)
        order = np.argsort(first, kind="stable")
        element_words = element_words[order]
        element_reps = first[order]

        cap = active_caps().lattice_nodes
        index: dict[bytes, int] = {top.tobytes(): 0}
        words = [top]
        defining: list[tuple[int, ...]] = [()]
        children: list[list[int]] = [[]]
        queue: deque[int] = deque([0])
        while queue:
            a = queue.popleft()
            current = words[a]
            meets = current & element_words
            proper = np.flatnonzero(np.any(meets != current, axis=1))
            if not proper.size:
                continue
            distinct, pos = np.unique(meets[proper], axis=0, return_index=True)
            for j in np.argsort(pos, kind="stable"):
                row = distinct[j]
                key = row.tobytes()
                b = index.get(key)
                if b is None:
                    b = len(words)
                    if b >= cap:
                        raise CapExceededError("lattice_nodes", cap, b + 1)
                    index[key] = b
                    words.append(row.copy())
                    defining.append((*defining[a], int(element_reps[proper[pos[j]]])))
                    children.append([])
                    queue.append(b)
                children[a].append(b)

        all_words = np.vstack(words)
        covers = []
        for b, cands in enumerate(children):
            if not cands:
                continue
            sub = _subset_matrix(all_words[cands])
            np.fill_diagonal(sub, False)
            for i, a in enumerate(cands):
                if not sub[i].any():
                    covers.append((a, b))
        logger.debug("Centralizer lattice of %s: %d nodes, %d covers", G.name, len(words), len(covers))
        return CentralizerLattice(
            G, all_words, popcount(all_words), defining, covers, element_words, element_reps
        )

    return G.cached("centralizer_lattice", compute)


@dataclass(frozen=True)
class CdimResult:
    """c-dimension of a group with a witnessing chain.

    Attributes:
        value_terms: Subgroups in a longest strict chain of centralizers
        value_steps: Strict inclusions in that chain (value_terms - 1)
        witnesses: x_1..x_m with chain[i] = C_G(x_1, ..., x_i)
        chain: The chain, from G down to Z(G)
        separators: h_i in chain[i] but not in chain[i+1]
        lattice_size: Number of lattice nodes
    """

    value_terms: int
    value_steps: int
    witnesses: list[Permutation]
    chain: list[SubgroupRef]
    separators: list[Permutation]
    lattice_size: int = 1


def _heights(lattice: CentralizerLattice) -> np.ndarray:
    height = np.ones(len(lattice), dtype=np.int64)
    below: dict[int, list[int]] = {}
    for a, b in lattice.covers:
        below.setdefault(b, []).append(a)
    for b in np.argsort(lattice.orders, kind="stable"):
        kids = below.get(int(b))
        if kids:
            height[b] = 1 + max(height[a] for a in kids)
    return height


def cdim(G: GroupHandle) -> CdimResult:
    """c-dimension, by longest path in the cover DAG of the centralizer lattice.

    Example:
        >>> from centra.corpus import make_symmetric
        >>> cdim(make_symmetric(3)).value_terms
        3
    """

    def compute() -> CdimResult:
        lattice = centralizer_lattice(G)
        table = G.table()
        steps = int(nx.dag_longest_path_length(lattice.graph))
        height = _heights(lattice)
        if int(height[0]) != steps + 1:
            raise MalformedResultError("longest path disagrees with lattice heights")
        below: dict[int, list[int]] = {}
        for a, b in lattice.covers:
            below.setdefault(b, []).append(a)
        path = [0]
        while below.get(path[-1]):
            kids = sorted(below[path[-1]])
            path.append(max(kids, key=lambda a: (height[a], -a)))
        masks = [lattice.mask(i) for i in path]
        witnesses = []
        for prev, nxt in zip(path, path[1:], strict=False):
            meets = lattice.words[prev] & lattice.element_words
            hits = np.flatnonzero(np.all(meets == lattice.words[nxt], axis=1))
            witnesses.append(table.perm(int(lattice.element_reps[hits].min())))
        separators = [
            table.perm(int(np.flatnonzero(upper & ~lower)[0]))
            for upper, lower in zip(masks, masks[1:], strict=False)
        ]
        chain = [SubgroupRef.from_mask(G, m) for m in masks]
        return CdimResult(
            value_terms=steps + 1,
            value_steps=steps,
            witnesses=witnesses,
            chain=chain,
            separators=separators,
            lattice_size=len(lattice),
        )

    return G.cached("cdim", compute)


def verify_witnesses(G: GroupHandle, result: CdimResult) -> bool:
    """Recheck the chain and the c-dimension of the witnessing subgroup.

    Raises:
        MalformedResultError: If the result's fields are inconsistent
    """
    m = result.value_terms - 1
    if result.value_steps != m or len(result.chain) != result.value_terms:
        raise MalformedResultError("chain length does not match value_terms")
    if len(result.witnesses) != m or len(result.separators) != m:
        raise MalformedResultError("one witness and one separator per step are required")
    if result.chain[0].order() != G.order():
        return False
    for i in range(1, result.value_terms):
        expected = centralizer(G, result.witnesses[:i])
        if result.chain[i] != expected:
            return False
        if result.chain[i].order() >= result.chain[i - 1].order():
            return False
    for i, h in enumerate(result.separators):
        if not result.chain[i].contains(h) or result.chain[i + 1].contains(h):
            return False
    W = SubgroupRef(G, [*result.witnesses, *result.separators], _check=False)
    return cdim(W.as_group()).value_terms == result.value_terms


def longest_chain_bruteforce(lattice: CentralizerLattice) -> int:
    """Longest strict chain (in terms) by exhaustive search over all inclusions.

    Raises:
        CapExceededError: If the lattice is larger than the DFS oracle cap
    """
    cap = active_caps().dfs_oracle_nodes
    if len(lattice) > cap:
        raise CapExceededError("dfs_oracle_nodes", cap, len(lattice))
    inside = _subset_matrix(lattice.words)
    np.fill_diagonal(inside, False)
    best: dict[int, int] = {}

    def longest_from(b: int) -> int:
        if b not in best:
            below = np.flatnonzero(inside[:, b])
            best[b] = 1 + max((longest_from(int(a)) for a in below), default=0)
        return best[b]

    return max(longest_from(b) for b in range(len(lattice)))


def _omega(n: int) -> int:
    return sum(factorint(n).values())


def exact_subgroup_chain_length(G: GroupHandle) -> int:
    """l(G) by exhaustive search over conjugacy classes of subgroups.

    Every step of a longest chain is a maximal inclusion H < <H, x>, so
    climbing from 1 by adjoining one element at a time reaches all of them.
    Subgroups are memoized per conjugacy class.

    Raises:
        CapExceededError: If |G| exceeds the exact chain cap
    """
    cap = active_caps().exact_chain
    if G.order() > cap:
        raise CapExceededError("exact_chain", cap, G.order())

    def compute() -> int:
        table = G.table()
        size = table.size
        class_id: dict[bytes, int] = {}
        reps: list[np.ndarray] = []
        height: dict[int, int] = {}

        def classify(mask: np.ndarray) -> int:
            key = np.packbits(mask).tobytes()
            if key in class_id:
                return class_id[key]
            cid = len(reps)
            reps.append(mask)
            members = np.flatnonzero(mask)
            for g in range(size):
                conj = np.zeros(size, dtype=bool)
                conj[table.conjugate_indices(members, g)] = True
                class_id.setdefault(np.packbits(conj).tobytes(), cid)
            return cid

        def climb(cid: int) -> int:
            if cid in height:
                return height[cid]
            mask = reps[cid]
            if mask.all():
                height[cid] = 0
                return 0
            H = SubgroupRef.from_mask(G, mask)
            h_gens = table.generators_of(mask)
            n_mask = normalizer_mask(G, H)
            n_rows = table.rows[n_mask]
            n_inv = table.inverse_rows[n_mask]
            h_rows = table.rows[mask]
            done = mask.copy()
            best = 0
            for x in range(size):
                if done[x]:
                    continue
                K = table.closure([*h_gens, x])
                best = max(best, 1 + climb(classify(K)))
                for y in table.lookup(table.rows[x][h_rows]):
                    conj = np.take_along_axis(n_rows, table.rows[y][n_inv].astype(np.intp), axis=1)
                    done[table.lookup(conj)] = True
            height[cid] = best
            return best

        trivial = np.zeros(size, dtype=bool)
        trivial[table.identity] = True
        length = climb(classify(trivial))
        logger.debug("Exact chain search on order %d: %d subgroup classes", size, len(reps))
        return length

    return G.cached("exact_chain_length", compute)


def subgroup_chain_length(G: GroupHandle) -> int:
    """l(G), the number of strict inclusions in a longest subgroup chain.

    Soluble groups give Omega(|G|). Otherwise l is additive along a minimal
    normal series, l(S^k) = k l(S), and only the simple sections are searched
    exactly.

    Raises:
        CapExceededError: If a nonabelian simple section exceeds the exact
            chain cap or a quotient exceeds the quotient cap
    """

    def compute() -> int:
        if G.order() == 1:
            return 0
        if is_soluble(G):
            return _omega(G.order())
        N = minimal_normal_subgroups(G)[0]
        N_group = N.as_group()
        if N_group.is_abelian():
            below = _omega(N.order())
        else:
            S = minimal_normal_subgroups(N_group)[0]
            k = len(minimal_normal_subgroups(N_group))
            below = k * exact_subgroup_chain_length(S.as_group())
        Q, _ = quotient_or_self(G, N)
        return below + subgroup_chain_length(Q)

    return G.cached("chain_length", compute)


def _as_group(G: GroupHandle, H: SubgroupRef) -> GroupHandle:
    return G if H.order() == G.order() else H.as_group()


def check_finext_bound(G: GroupHandle, N: SubgroupRef, group_name: str = "") -> CheckReport:
    """cdim_steps(G) <= (l + 1)^2 (k + 1) with k = cdim_steps(N), l = l(G/N).

    Raises:
        NotNormalError: If N is not normal in G
    """
    if not is_normal(G, N):
        raise NotNormalError(N.order(), G.order())
    k = cdim(_as_group(G, N)).value_steps
    Q, _ = quotient_or_self(G, N)
    l = subgroup_chain_length(Q)
    c = cdim(G).value_steps
    bound = (l + 1) ** 2 * (k + 1)
    bound_terms = (l + 1) ** 2 * (k + 2)
    return CheckReport(
        "finext-bound",
        group_name or G.name or "",
        inputs={"normal_order": N.order(), "order": G.order()},
        computed={
            "k": k,
            "l": l,
            "cdim_steps": c,
            "bound_value": bound,
            "cdim_terms": c + 1,
            "bound_value_terms": bound_terms,
            "holds_terms": c + 1 <= bound_terms,
        },
        status=verdict(c <= bound),
        reason=None if c <= bound else "c-dimension above (l+1)^2(k+1)",
        margin=bound - c,
    )


def check_dkr_bound(G: GroupHandle, H: SubgroupRef, group_name: str = "") -> CheckReport:
    """cdim_steps(G) <= k(k(d + 2) + 2) with k = [G:H], d = cdim_steps(H).

    Raises:
        NotInGroupError: If H is not contained in G
    """
    for h in H.generators:
        if not G.contains(h):
            raise NotInGroupError(format_cycles(h))
    k = G.order() // H.order()
    d = cdim(_as_group(G, H)).value_steps
    c = cdim(G).value_steps
    bound = k * (k * (d + 2) + 2)
    return CheckReport(
        "dkr-bound",
        group_name or G.name or "",
        inputs={"index": k, "subgroup_order": H.order()},
        computed={"d": d, "cdim_steps": c, "bound_value": bound},
        status=verdict(c <= bound),
        reason=None if c <= bound else "c-dimension above k(k(d+2)+2)",
        margin=bound - c,
    )
