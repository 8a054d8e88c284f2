"""
Tests for components, the layer, F*(G) and induced automorphisms.
"""

import pytest

from centra.config import Caps, use_caps
from centra.corpus import make_alternating, make_symmetric
from centra.exceptions import CapExceededError, NotAComponentError
from centra.layer import (
    center_of_fitting,
    check_generalized_fitting,
    check_indaut_lemma,
    components,
    generalized_fitting,
    induced_automorphism_order,
    induced_automorphisms,
    is_quasisimple,
    layer,
    subnormal_quasisimple_bruteforce,
)
from centra.permcore import SubgroupRef, is_isomorphic_small
from centra.report import Status
from centra.subgrp import center, fitting


class TestQuasisimple:
    """Perfect central extensions of simple groups."""

    @pytest.mark.parametrize(
        ("name", "expected"),
        [("A5", True), ("SL(2,5)", True), ("S5", False), ("S4", False), ("C5", False), ("C1", False)],
    )
    def test_is_quasisimple(self, group, name, expected):
        """Perfect with simple central quotient."""
        assert is_quasisimple(group(name)) is expected


class TestComponents:
    """Subnormal quasisimple subgroups."""

    def test_simple_group_is_its_component(self, group):
        """A simple group has itself as its only component."""
        G = group("A5")
        found = components(G)
        assert len(found) == 1
        assert found.components[0].order() == 60
        assert layer(G).order() == 60

    def test_quasisimple_group_is_its_component(self, group):
        """SL(2,5) is a component although its minimal normal subgroup is abelian."""
        found = components(group("SL(2,5)"))
        assert [Q.order() for Q in found.components] == [120]

    def test_soluble_group_has_none(self, group):
        """Soluble groups have trivial layer."""
        G = group("S4")
        assert len(components(G)) == 0
        assert layer(G).order() == 1

    def test_component_in_direct_product(self, group):
        """SL(2,5) x C7 has the single component SL(2,5) x 1."""
        found = components(group("SL(2,5)xC7"))
        assert [Q.order() for Q in found.components] == [120]

    @pytest.mark.parametrize("name", ["A5", "S5", "SL(2,5)", "S4", "A4", "D12", "SL(2,3)"])
    def test_matches_bruteforce(self, group, name):
        """Components agree with the exhaustive subnormal search."""
        G = group(name)
        brute = subnormal_quasisimple_bruteforce(G)
        assert sorted(Q.order() for Q in brute) == sorted(Q.order() for Q in components(G).components)
        for Q in brute:
            assert any(Q == K for K in components(G).components)

    def test_bruteforce_cap(self):
        """The exhaustive search refuses groups above its cap."""
        with use_caps(Caps(brute_components=10)), pytest.raises(CapExceededError):
            subnormal_quasisimple_bruteforce(make_alternating(5))

    @pytest.mark.slow
    def test_a5_squared(self, group):
        """A5 x A5 has two components."""
        assert [Q.order() for Q in components(group("A5xA5")).components] == [60, 60]


class TestGeneralizedFitting:
    """F*(G) = F(G) E(G)."""

    def test_nilpotent(self, group):
        """F*(G) = G for nilpotent G."""
        assert generalized_fitting(group("D8")).order() == 8
        assert generalized_fitting(group("Q8")).order() == 8

    def test_simple(self, group):
        """F*(G) = G for simple G."""
        assert generalized_fitting(group("A5")).order() == 60

    def test_s4(self, group):
        """F*(S4) = V4."""
        assert generalized_fitting(group("S4")).order() == 4

    def test_s4xa5(self, group):
        """F = V4 x 1 and E = 1 x A5."""
        assert generalized_fitting(group("S4xA5")).order() == 240

    def test_center_of_fitting(self, group):
        """Z(F(G)) for S4 and SL(2,3)."""
        assert center_of_fitting(group("S4")).order() == 4
        assert center_of_fitting(group("SL(2,3)")).order() == 2

    @pytest.mark.parametrize("name", ["S4", "A5", "S5", "SL(2,3)", "SL(2,5)", "Q8", "C3^2:C2^2"])
    def test_self_centralizing(self, group, name):
        """C_G(F*) lies in F*."""
        report = check_generalized_fitting(group(name), name)
        assert report.status is Status.PASS
        assert report.computed["centralizer_contained"]
        assert report.computed["layer_commutes_with_fitting"]


class TestInducedAutomorphisms:
    """N_G(H)/C_G(H) acting on H."""

    def test_central_subgroup(self, group):
        """A central subgroup has trivial induced automorphisms."""
        G = group("Q8")
        assert induced_automorphisms(G, center(G)).order() == 1

    def test_s4_on_v4(self, group):
        """S4 induces the full S3 on V4."""
        G = group("S4")
        A = induced_automorphisms(G, fitting(G))
        assert A.order() == 6
        assert A.degree == 4
        assert is_isomorphic_small(A, make_symmetric(3))
        assert induced_automorphism_order(G, fitting(G)) == 6

    def test_inner_automorphisms(self, group):
        """Aut_G(G) is G/Z(G)."""
        G = group("D8")
        assert induced_automorphisms(G, SubgroupRef.whole(G)).order() == 4

    def test_enumeration_cap(self, group):
        """The whole group above the enumeration cap is refused."""
        G = group("A5")
        with use_caps(Caps(enumeration=50)), pytest.raises(CapExceededError):
            induced_automorphisms(G, SubgroupRef.whole(G))


class TestIndAutLemma:
    """Aut_G(Q) against Aut_Gbar(Qbar) for Gbar = G/R(G)."""

    def test_simple_group(self, group):
        """Induced automorphisms agree for a simple group."""
        G = group("A5")
        Q = components(G).components[0]
        report = check_indaut_lemma(G, Q, "A5")
        assert report.passed
        assert report.computed["aut_order"] == 60
        assert report.computed["isomorphism_checked"]
        assert report.computed["isomorphic"]

    def test_s5_outer_action(self, group):
        """The outer automorphism of A5 is seen on both sides."""
        G = group("S5")
        Q = components(G).components[0]
        report = check_indaut_lemma(G, Q)
        assert report.passed
        assert report.computed["aut_order"] == 120

    def test_central_product_with_radical(self, group):
        """SL(2,5) x C7: R = Z x C7 and both sides have order 60."""
        G = group("SL(2,5)xC7")
        Q = components(G).components[0]
        report = check_indaut_lemma(G, Q)
        assert report.passed
        assert report.inputs["radical_order"] == 14
        assert report.computed["aut_order"] == report.computed["aut_bar_order"] == 60

    def test_not_a_component(self, group):
        """Subgroups that are not components are rejected."""
        G = group("S4")
        with pytest.raises(NotAComponentError):
            check_indaut_lemma(G, fitting(G))

    def test_isomorphism_skipped_above_cap(self, group):
        """Above the isomorphism cap only orders are compared."""
        G = group("S5")
        Q = components(G).components[0]
        with use_caps(Caps(isomorphism=100)):
            report = check_indaut_lemma(G, Q)
        assert report.passed
        assert not report.computed["isomorphism_checked"]
