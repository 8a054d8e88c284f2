"""
Tests for centralizer lattices, c-dimension and subgroup-chain length.
"""

import random
from dataclasses import replace

import numpy as np
import pytest

from centra.cdim import (
    cdim,
    centralizer_lattice,
    check_dkr_bound,
    check_finext_bound,
    exact_subgroup_chain_length,
    longest_chain_bruteforce,
    pack_masks,
    popcount,
    subgroup_chain_length,
    unpack_words,
    verify_witnesses,
)
from centra.config import Caps, use_caps
from centra.corpus import corpus_default, make_cyclic, make_symmetric
from centra.exceptions import (
    CapExceededError,
    MalformedResultError,
    NotInGroupError,
    NotNormalError,
)
from centra.permcore import SubgroupRef, direct_product, group_from_generators
from centra.report import Status
from centra.subgrp import centralizer, derived_subgroup, fitting


class TestBitsets:
    """Packed subgroup masks."""

    @pytest.mark.parametrize("size", [1, 7, 64, 65, 130])
    def test_pack_unpack(self, size):
        """Packing into uint64 words round-trips and popcounts match."""
        rng = np.random.default_rng(size)
        masks = rng.random((3, size)) < 0.5
        words = pack_masks(masks)
        assert words.dtype == np.uint64
        assert np.array_equal(unpack_words(words, size), masks)
        assert popcount(words).tolist() == masks.sum(axis=1).tolist()


class TestCentralizerLattice:
    """Meet-closure of element centralizers."""

    def test_abelian_single_node(self, group):
        """An abelian group has only itself as a centralizer."""
        lattice = centralizer_lattice(group("C2^3"))
        assert len(lattice) == 1
        assert lattice.covers == []

    def test_s3_nodes(self, group):
        """S3, three subgroups of order 2, one of order 3 and the trivial group."""
        lattice = centralizer_lattice(group("S3"))
        assert sorted(lattice.orders.tolist()) == [1, 2, 2, 2, 3, 6]
        assert lattice.orders[lattice.top] == 6
        assert lattice.orders[lattice.bottom] == 1

    def test_q8_nodes(self, group):
        """Q8, three cyclic subgroups of order 4 and the center."""
        lattice = centralizer_lattice(group("Q8"))
        assert sorted(lattice.orders.tolist()) == [2, 4, 4, 4, 8]

    def test_nodes_are_centralizers(self, group):
        """Every node is the centralizer of its defining elements."""
        G = group("S4")
        lattice = centralizer_lattice(G)
        table = G.table()
        for i, node in enumerate(lattice.nodes):
            S = [table.perm(x) for x in lattice.defining[i]]
            assert node == centralizer(G, S)

    def test_graph_is_cover_dag(self, group):
        """The cover DAG has one vertex per node and one edge per cover."""
        lattice = centralizer_lattice(group("D8"))
        assert lattice.graph.number_of_nodes() == len(lattice)
        assert lattice.graph.number_of_edges() == len(lattice.covers)

    def test_index_of(self, group):
        """Masks map back to their node index, non-nodes to -1."""
        G = group("S3")
        lattice = centralizer_lattice(G)
        assert lattice.index_of(np.ones(6, dtype=bool)) == 0
        for i in range(len(lattice)):
            assert lattice.index_of(lattice.mask(i)) == i
        not_a_subgroup = np.ones(6, dtype=bool)
        not_a_subgroup[G.table().identity] = False
        assert lattice.index_of(not_a_subgroup) == -1

    def test_lattice_cap(self):
        """Too many lattice nodes raise the cap error."""
        with use_caps(Caps(lattice_nodes=3)), pytest.raises(CapExceededError):
            centralizer_lattice(make_symmetric(3))


SMALL_NAMES = [e.name for e in corpus_default() if e.annotations["order"] <= 200]


class TestLatticeClosure:
    """Every lattice node is a closed centralizer."""

    @pytest.mark.parametrize("name", SMALL_NAMES)
    def test_double_centralizer(self, group, name):
        """C_G(C_G(S)) = S for every node S."""
        G = group(name)
        for S in centralizer_lattice(G).nodes:
            C = centralizer(G, S.generators)
            assert centralizer(G, C.generators) == S

    @pytest.mark.parametrize("name", SMALL_NAMES)
    def test_node_orders_divide_group_order(self, group, name):
        """Lagrange on every node."""
        G = group(name)
        assert all(G.order() % int(n) == 0 for n in centralizer_lattice(G).orders)


class TestCdim:
    """Longest chains of centralizers."""

    def test_trivial_group(self, group):
        """The trivial group has one term and no steps."""
        result = cdim(group("C1"))
        assert result.value_terms == 1
        assert result.value_steps == 0

    def test_abelian(self, group):
        """A nontrivial abelian group has one term, no steps and no witnesses."""
        result = cdim(group("C12"))
        assert (result.value_terms, result.value_steps) == (1, 0)
        assert result.witnesses == []
        assert len(result.chain) == 1

    def test_s3(self, group):
        """S3 > C(x) > 1."""
        result = cdim(group("S3"))
        assert result.value_terms == 3
        assert result.value_steps == 2
        assert [H.order() for H in result.chain][0] == 6
        assert result.chain[-1].order() == 1
        assert result.lattice_size == 6

    def test_q8(self, group):
        """Q8 > C4 > Z."""
        assert cdim(group("Q8")).value_terms == 3

    def test_s4(self, group):
        """S4 > D8 > C2^2 > C2 > 1."""
        result = cdim(group("S4"))
        assert result.value_terms == 5
        assert [H.order() for H in result.chain] == [24, 8, 4, 2, 1]

    def test_a4_and_a5(self, group):
        """A4 > C2^2 > 1 and A5 > C5 > 1."""
        assert cdim(group("A4")).value_terms == 3
        assert cdim(group("A5")).value_terms == 3

    def test_chain_ends_at_center(self, group):
        """The chain bottoms out at Z(SL(2,3))."""
        result = cdim(group("SL(2,3)"))
        assert result.chain[-1].order() == 2

    @pytest.mark.parametrize("name", ["S3", "D8", "Q8", "A4", "S4", "D12", "SL(2,3)", "C3^2:C2^2"])
    def test_longest_path_matches_bruteforce(self, group, name):
        """Longest path in the cover DAG equals the exhaustive chain search."""
        G = group(name)
        assert cdim(G).value_terms == longest_chain_bruteforce(centralizer_lattice(G))

    def test_bruteforce_cap(self):
        """The DFS oracle refuses lattices above its cap."""
        with use_caps(Caps(dfs_oracle_nodes=2)), pytest.raises(CapExceededError):
            longest_chain_bruteforce(centralizer_lattice(make_symmetric(3)))


class TestWitnesses:
    """Witness extraction and verification."""

    @pytest.mark.parametrize("name", ["S3", "S4", "C6", "Q8", "GL(2,3)"])
    def test_verify(self, group, name):
        """Witnesses reproduce the chain."""
        G = group(name)
        assert verify_witnesses(G, cdim(G))

    def test_s3_witnesses_generate_s3(self, group):
        """Witnesses and separators of S3 generate S3."""
        G = group("S3")
        result = cdim(G)
        W = SubgroupRef(G, [*result.witnesses, *result.separators])
        assert W.order() == 6

    def test_separators_split_the_chain(self, group):
        """Separator i lies in chain[i] but not in chain[i+1]."""
        result = cdim(group("S4"))
        for i, h in enumerate(result.separators):
            assert result.chain[i].contains(h)
            assert not result.chain[i + 1].contains(h)

    def test_malformed_result(self, group):
        """Inconsistent terms and steps are rejected."""
        G = group("S3")
        broken = replace(cdim(G), value_steps=5)
        with pytest.raises(MalformedResultError):
            verify_witnesses(G, broken)

    def test_wrong_witness_rejected(self, group):
        """A chain that is not C_G(x_1..x_i) fails verification."""
        G = group("S3")
        result = cdim(G)
        swapped = replace(result, witnesses=[G.identity(), *result.witnesses[1:]])
        assert not verify_witnesses(G, swapped)


class TestCdimProperties:
    """Behaviour of cdim under subgroups and direct products."""

    @pytest.mark.parametrize("name", ["S4", "GL(2,3)", "SL(2,3)", "A5"])
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_monotone_under_subgroups(self, group, name, seed):
        """cdim_terms(H) <= cdim_terms(G) for H generated by two sampled elements."""
        G = group(name)
        picked = random.Random(seed).sample(list(G.elements()), 2)
        H = group_from_generators(G.degree, picked)
        assert cdim(H).value_terms <= cdim(G).value_terms

    @pytest.mark.parametrize(("left", "right"), [("S3", "S3"), ("S3", "C2"), ("Q8", "S3"), ("D8", "C3")])
    def test_direct_product_adds(self, group, left, right):
        """Centralizers in G x H are products, so chains interleave."""
        G, H = group(left), group(right)
        product = direct_product(G, H)
        assert cdim(product).value_terms == cdim(G).value_terms + cdim(H).value_terms - 1


class TestSubgroupChainLength:
    """l(G)."""

    @pytest.mark.parametrize(("name", "length"), [("C7", 1), ("C12", 3), ("S4", 4), ("A4", 3), ("Q8", 3)])
    def test_soluble(self, group, name, length):
        """l(G) is the number of prime factors of """
        assert subgroup_chain_length(group(name)) == length

    def test_trivial(self, group):
        """l(1) = 0."""
        assert subgroup_chain_length(group("C1")) == 0

    def test_a5(self, group):
        """1 < C2 < V4 < A4 < A5."""
        assert subgroup_chain_length(group("A5")) == 4
        assert exact_subgroup_chain_length(group("A5")) == 4

    def test_exact_matches_soluble_shortcut(self, group):
        """The exact search agrees with Omega("""
        for name in ("S4", "D12", "SL(2,3)"):
            G = group(name)
            assert exact_subgroup_chain_length(G) == subgroup_chain_length(G)

    def test_insoluble_via_normal_series(self, group):
        """l(S5) = l(A5) + 1 and l(SL(2,5)) = l(A5) + 1."""
        assert subgroup_chain_length(group("S5")) == 5
        assert subgroup_chain_length(group("SL(2,5)")) == 5

    def test_exact_cap(self):
        """The exact search refuses groups above its cap."""
        with use_caps(Caps(exact_chain=10)), pytest.raises(CapExceededError):
            exact_subgroup_chain_length(make_symmetric(4))


class TestBounds:
    """Finite-extension and index bounds on c-dimension."""

    def test_finext_s4_v4(self, group):
        """k = 0, l = l(S3) = 2, bound 9."""
        G = group("S4")
        report = check_finext_bound(G, fitting(G))
        assert report.status is Status.PASS
        assert report.computed["k"] == 0
        assert report.computed["l"] == 2
        assert report.computed["bound_value"] == 9
        assert report.margin == 9 - 4
        assert report.group_name == "S4"

    def test_finext_whole_group(self, group):
        """(G, G): l = 0 and bound k + 1."""
        G = group("D8")
        report = check_finext_bound(G, SubgroupRef.whole(G))
        assert report.computed["l"] == 0
        assert report.computed["bound_value"] == report.computed["k"] + 1
        assert report.passed

    def test_finext_trivial_subgroup(self, group):
        """N = 1 compares G with itself."""
        G = group("S4")
        report = check_finext_bound(G, SubgroupRef.trivial(G))
        assert report.computed["k"] == 0
        assert report.computed["l"] == 4
        assert report.passed

    def test_finext_requires_normal(self, group, perm):
        """A non-normal N is rejected."""
        G = group("S4")
        with pytest.raises(NotNormalError):
            check_finext_bound(G, SubgroupRef(G, [perm("(1 2)", 4)]))

    def test_dkr_s4_a4(self, group):
        """The DKR bound on A4 of index 2 in S4."""
        G = group("S4")
        report = check_dkr_bound(G, derived_subgroup(G))
        assert report.inputs["index"] == 2
        assert report.computed["d"] == 2
        assert report.computed["bound_value"] == 2 * (2 * 4 + 2)
        assert report.passed

    def test_dkr_whole_group(self, group):
        """k = 1 gives bound d + 4."""
        G = group("S3")
        report = check_dkr_bound(G, SubgroupRef.whole(G))
        assert report.computed["bound_value"] == report.computed["d"] + 4
        assert report.margin == 4

    def test_dkr_requires_subgroup(self, group):
        """H must be a subgroup of G."""
        G = group("S3")
        H = SubgroupRef(group("S4"), [make_cyclic(4).generators[0]])
        with pytest.raises(NotInGroupError):
            check_dkr_bound(G, H)
