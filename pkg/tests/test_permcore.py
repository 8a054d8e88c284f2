"""
Tests for group handles, element tables, subgroups and homomorphisms.
"""

import numpy as np
import pytest
from sympy.combinatorics import Permutation

from centra.config import Caps, use_caps
from centra.corpus import make_alternating, make_cyclic, make_elementary_abelian, make_symmetric
from centra.exceptions import (
    CapExceededError,
    DegreeMismatchError,
    NotAHomomorphismError,
    NotInGroupError,
    NotNormalError,
)
from centra.permcore import (
    GroupHandle,
    Homomorphism,
    SubgroupRef,
    conjugacy_class_reps,
    conjugacy_classes,
    direct_product,
    group_from_generators,
    is_isomorphic_small,
    is_normal,
    quotient,
    quotient_or_self,
)
from centra.subgrp import fitting, minimal_normal_subgroups


class TestGroupHandle:
    """Construction, order and enumeration."""

    def test_empty_generating_set(self):
        """No generators gives the trivial group."""
        G = group_from_generators(3, [])
        assert G.order() == 1
        assert list(G.elements()) == [Permutation(list(range(3)))]

    def test_symmetric_from_two_generators(self, perm):
        """(1 2) and (1 2 3) generate S3."""
        G = group_from_generators(3, [perm("(1 2)", 3), perm("(1 2 3)", 3)])
        assert G.order() == 6

    def test_alternating_from_two_generators(self, perm):
        """A 5-cycle and a 3-cycle generate A5."""
        G = group_from_generators(5, [perm("(1 2 3 4 5)", 5), perm("(1 2 3)", 5)])
        assert G.order() == 60
        assert len(G.table().rows) == 60

    def test_degree_mismatch(self, perm):
        """Generators must have the handle's degree."""
        with pytest.raises(DegreeMismatchError):
            group_from_generators(4, [perm("(1 2)", 3)])

    def test_degree_zero(self):
        """Degree zero is rejected."""
        with pytest.raises(DegreeMismatchError):
            GroupHandle(0, [])

    def test_order_from_certificate_matches_table(self, group):
        """Stabilizer chain and enumeration agree."""
        G = group("PSL(2,7)")
        assert G.order() == 168
        assert G.table().size == 168

    def test_elements_unique_identity_first(self, group):
        """Each element once, identity first."""
        elements = list(group("S3").elements())
        assert elements[0].is_Identity
        assert len(set(elements)) == 6

    def test_element_orders_of_s3(self, group):
        """S3 has three involutions and two elements of order 3."""
        orders = group("S3").table().element_orders.tolist()
        assert sorted(orders) == [1, 2, 2, 2, 3, 3]

    def test_contains(self, group, perm):
        """Membership follows the stabilizer chain."""
        G = group("A4")
        assert G.contains(perm("(1 2 3)", 4))
        assert not G.contains(perm("(1 2)", 4))
        assert not G.contains(perm("(1 2 3)", 5))

    def test_element_order_outside_group(self, group, perm):
        """The order of a non-member is refused."""
        with pytest.raises(NotInGroupError):
            group("A4").element_order(perm("(1 2)", 4))

    def test_cached_computes_once(self):
        """Memoized values are computed only on first request."""
        G = make_cyclic(3)
        calls = []
        assert G.cached("k", lambda: calls.append(1) or 7) == 7
        assert G.cached("k", lambda: calls.append(1) or 8) == 7
        assert calls == [1]


class TestElementTable:
    """Vectorized lookup and products on the element table."""

    def test_lookup_missing_row(self, group):
        """Rows that are not elements map to -1."""
        table = group("A4").table()
        transposition = np.array([1, 0, 2, 3])
        assert table.lookup(transposition).tolist() == [-1]

    def test_lookup_2d(self, group):
        """Every row finds its own index."""
        table = group("S4").table()
        assert table.lookup(table.rows).tolist() == list(range(24))

    def test_inverse_index(self, group):
        """x * x^-1 is the identity for every x."""
        table = group("D8").table()
        products = table.multiply(table.rows, table.rows[table.inverse_index])
        assert set(table.lookup(products).tolist()) == {table.identity}

    def test_closure_of_generator(self, group, perm):
        """The closure of a 4-cycle in S4 has 4 elements."""
        table = group("S4").table()
        mask = table.closure([table.index_of(perm("(1 2 3 4)", 4))])
        assert int(mask.sum()) == 4


class TestConjugacy:
    """Conjugacy classes."""

    def test_abelian_every_element_own_class(self, group):
        """Every element of an abelian group is its own class."""
        assert len(conjugacy_class_reps(group("C6"))) == 6

    def test_s3_classes(self, group):
        """Three classes of sizes 1, 3, 2."""
        classes = conjugacy_classes(group("S3"))
        assert sorted(classes.sizes().tolist()) == [1, 2, 3]

    def test_s4_classes(self, group):
        """S4 has five classes."""
        assert len(conjugacy_class_reps(group("S4"))) == 5

    def test_conjugator_maps_representative(self, group):
        """rep ^ conjugator[x] == x for every element x."""
        G = group("S4")
        table = G.table()
        classes = conjugacy_classes(G)
        for x in range(table.size):
            rep = table.perm(int(classes.reps[classes.class_of[x]]))
            t = table.perm(int(classes.conjugator[x]))
            assert rep ^ t == table.perm(x)


class TestSubgroupRef:
    """Subgroups as generator lists and masks."""

    def test_order_and_contains(self, group, perm):
        """Order and membership of a cyclic subgroup."""
        G = group("S4")
        H = SubgroupRef(G, [perm("(1 2 3 4)", 4)])
        assert H.order() == 4
        assert H.contains(perm("(1 3)(2 4)", 4))
        assert not H.contains(perm("(1 2)", 4))

    def test_generator_outside_ambient(self, group, perm):
        """Generators must lie in the ambient group."""
        with pytest.raises(NotInGroupError):
            SubgroupRef(group("A4"), [perm("(1 2)", 4)])

    def test_equality_by_elements(self, group, perm):
        """Different generating sets of the same subgroup compare equal."""
        G = group("S4")
        a = SubgroupRef(G, [perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)])
        b = SubgroupRef(G, [perm("(1 4)(2 3)", 4), perm("(1 2)(3 4)", 4)])
        assert a == b
        assert hash(a) == hash(b)

    def test_intersection_and_join(self, group, perm):
        """Intersection and join of two subgroups of order 2."""
        G = group("S4")
        a = SubgroupRef(G, [perm("(1 2)", 4)])
        b = SubgroupRef(G, [perm("(3 4)", 4)])
        assert a.intersection(b).is_trivial()
        assert a.join(b).order() == 4
        assert a.is_subgroup_of(a.join(b))

    def test_whole_and_trivial(self, group):
        """Whole and trivial subgroups."""
        G = group("D10")
        assert SubgroupRef.whole(G).order() == 10
        assert SubgroupRef.trivial(G).order() == 1

    def test_as_group_shares_elements(self, group):
        """A subgroup as a group keeps its order and membership."""
        G = group("S4")
        V = fitting(G)
        H = V.as_group()
        assert H.order() == 4
        assert all(G.contains(g) for g in H.elements())

    def test_is_normal(self, group, perm):
        """V4 is normal in S4, a transposition subgroup is not."""
        G = group("S4")
        assert is_normal(G, fitting(G))
        assert not is_normal(G, SubgroupRef(G, [perm("(1 2)", 4)]))


class TestQuotient:
    """Regular representations of quotients."""

    def test_quotient_by_whole_group(self, group):
        """The quotient by G is trivial."""
        G = group("S4")
        Q, pi = quotient(G, SubgroupRef.whole(G))
        assert Q.order() == 1
        assert pi.kernel().order() == 24

    def test_s4_mod_v4_is_s3(self, group):
        """S4/V4 has order 6, is nonabelian and is isomorphic to S3."""
        G = group("S4")
        Q, pi = quotient(G, fitting(G))
        assert Q.order() == 6
        assert Q.degree == 6
        assert not Q.is_abelian()
        assert is_isomorphic_small(Q, make_symmetric(3))
        assert pi.kernel() == fitting(G)

    def test_quotient_by_trivial_is_regular(self, group):
        """G/1 is the regular representation, same order."""
        G = group("D8")
        Q, pi = quotient(G, SubgroupRef.trivial(G))
        assert Q.order() == 8
        assert Q.degree == 8
        assert pi.is_injective()

    def test_quotient_or_self_skips_trivial(self, group):
        """A trivial kernel returns the group itself."""
        G = group("D8")
        Q, pi = quotient_or_self(G, SubgroupRef.trivial(G))
        assert Q is G
        assert pi.is_injective()

    def test_non_normal(self, group, perm):
        """Quotients need a normal subgroup."""
        G = group("S4")
        with pytest.raises(NotNormalError):
            quotient(G, SubgroupRef(G, [perm("(1 2)", 4)]))

    def test_quotient_cap(self):
        """An index above the quotient cap raises before any work."""
        G = make_symmetric(4)
        with use_caps(Caps(quotient=5)), pytest.raises(CapExceededError):
            quotient(G, SubgroupRef.trivial(G))

    def test_preimage_of_image(self, group):
        """The preimage of the image of H is H N."""
        G = group("S4")
        V = fitting(G)
        Q, pi = quotient(G, V)
        H = SubgroupRef(G, [Permutation([[0, 1, 2]], size=4)])
        assert pi.preimage(pi.image(H)).order() == 12


class TestDirectProduct:
    """External direct products."""

    def test_with_trivial(self):
        """G x 1 is a copy of G."""
        P = direct_product(make_symmetric(3), make_cyclic(1))
        assert P.order() == 6
        assert P.name == "S3xC1"

    def test_coprime_cyclic(self):
        """C2 x C3 is cyclic of order 6."""
        P = direct_product(make_cyclic(2), make_cyclic(3))
        assert P.order() == 6
        assert is_isomorphic_small(P, make_cyclic(6))

    @pytest.mark.slow
    def test_a5_squared(self):
        """A5 x A5 has order 3600 and two minimal normal subgroups."""
        P = direct_product(make_alternating(5), make_alternating(5))
        assert P.order() == 3600
        assert [M.order() for M in minimal_normal_subgroups(P)] == [60, 60]


class TestHomomorphism:
    """Homomorphisms from generator images."""

    def test_sign_map(self, group, perm):
        """S3 -> C2 sending both generators' parities."""
        S3 = group("S3")
        C2 = make_cyclic(2)
        images = [
            perm("(1 2)", 2) if g.is_odd else perm("()", 2) for g in S3.generators
        ]
        sign = Homomorphism.from_generator_images(S3, C2, images)
        assert sign.kernel().order() == 3
        assert not sign.is_injective()

    def test_relation_violated(self, group, perm):
        """Sending a 3-cycle to an involution is not a homomorphism."""
        C3 = make_cyclic(3)
        S3 = group("S3")
        with pytest.raises(NotAHomomorphismError):
            Homomorphism.from_generator_images(C3, S3, [perm("(1 2)", 3)])

    def test_image_outside_target(self, group, perm):
        """Images must lie in the target group."""
        with pytest.raises(NotAHomomorphismError):
            Homomorphism.from_generator_images(make_cyclic(2), group("A4"), [perm("(1 2)", 4)])

    def test_wrong_number_of_images(self, group):
        """One image per generator is required."""
        with pytest.raises(NotAHomomorphismError):
            Homomorphism.from_generator_images(group("S3"), group("S3"), [])


class TestIsomorphism:
    """Small isomorphism tests."""

    def test_c4_not_klein(self):
        """C4 and C2^2 are not isomorphic."""
        assert not is_isomorphic_small(make_cyclic(4), make_elementary_abelian(2, 2))

    def test_group_with_itself(self, group):
        """A group is isomorphic to itself."""
        assert is_isomorphic_small(group("Q8"), group("Q8"))

    def test_q8_not_d8(self, group):
        """Same order and both nonabelian, different element orders."""
        assert not is_isomorphic_small(group("Q8"), group("D8"))

    def test_gl22_is_s3(self, group):
        """GL(2,2) is isomorphic to S3."""
        assert is_isomorphic_small(group("GL(2,2)"), group("S3"))

    def test_isomorphism_cap(self, group):
        """Groups above the isomorphism cap are refused."""
        with use_caps(Caps(isomorphism=100)), pytest.raises(CapExceededError):
            is_isomorphic_small(group("S5"), group("S5"))
