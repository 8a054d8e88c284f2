"""
Components, the layer E(G), F*(G) and induced automorphism groups.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from sympy.combinatorics import Permutation

from .config import active_caps
from .exceptions import CapExceededError, NotAComponentError
from .permcore import (
    GroupHandle,
    SubgroupRef,
    is_isomorphic_small,
    perm_to_row,
    quotient_or_self,
)
from .report import CheckReport, verdict
from .subgrp import (
    center,
    centralizer,
    derived_series,
    fitting,
    is_perfect,
    is_simple,
    minimal_normal_subgroups,
    normal_subgroups,
    normalizer,
    soluble_radical,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComponentSet:
    """The components of a group and the layer they generate."""

    ambient: GroupHandle
    components: list[SubgroupRef]
    layer: SubgroupRef

    def __len__(self) -> int:
        return len(self.components)


def _in(G: GroupHandle, H: SubgroupRef) -> SubgroupRef:
    """Re-home a subgroup of a subgroup of G as a subgroup of G."""
    return SubgroupRef(G, H.generators, _check=False)


def is_quasisimple(G: GroupHandle) -> bool:
    """Perfect with simple central quotient.

    Example:
        >>> from centra.corpus import make_alternating, make_symmetric
        >>> is_quasisimple(make_alternating(5)), is_quasisimple(make_symmetric(5))
        (True, False)
    """
    if G.order() == 1 or not is_perfect(G):
        return False
    Q, _ = quotient_or_self(G, center(G))
    return is_simple(Q)


def components(G: GroupHandle) -> ComponentSet:
    """All subnormal quasisimple subgroups of G.

    Components centralize R = R(G), so they live in C = C_G(R). With
    Z = C ∩ R, the nonabelian minimal normal subgroups of C/Z are products of
    simple groups; each simple factor lifts to a component as the perfect
    core of its preimage in C.

    Raises:
        CapExceededError: If a quotient exceeds the quotient cap
    """

    def compute() -> ComponentSet:
        R = soluble_radical(G)
        C = centralizer(G, R.generators)
        Z = C.intersection(R)
        C_group = C.as_group()
        Cbar, pi = quotient_or_self(C_group, _in(C_group, Z))
        found: list[SubgroupRef] = []
        if Cbar.order() > 1:
            for M in minimal_normal_subgroups(Cbar):
                M_group = M.as_group()
                if M_group.is_abelian():
                    continue
                for S in minimal_normal_subgroups(M_group):
                    X = pi.preimage(_in(Cbar, S))
                    core = derived_series(X.as_group()).terms[-1]
                    found.append(_in(G, core))
        if found:
            layer = found[0].join(*found[1:])
        else:
            layer = SubgroupRef.trivial(G)
        logger.debug("%d components, layer of order %d", len(found), layer.order())
        return ComponentSet(G, found, layer)

    return G.cached("components", compute)


def layer(G: GroupHandle) -> SubgroupRef:
    """E(G)."""
    return components(G).layer


def generalized_fitting(G: GroupHandle) -> SubgroupRef:
    """F*(G) = F(G) E(G)."""
    return G.cached("generalized_fitting", lambda: fitting(G).join(layer(G)))


def center_of_fitting(G: GroupHandle) -> SubgroupRef:
    """Z(F(G))."""
    F = fitting(G)
    return F.intersection(centralizer(G, F.generators))


def _conjugation_action(
    H: SubgroupRef, conjugators: tuple[Permutation, ...]
) -> list[Permutation]:
    table = H.as_group().table()
    gens = []
    for x in conjugators:
        action = table.lookup(table.conjugate_rows(table.rows, perm_to_row(x, H.ambient.degree)))
        perm = Permutation([int(i) for i in action])
        if not perm.is_Identity:
            gens.append(perm)
    return gens


def induced_automorphism_order(G: GroupHandle, H: SubgroupRef) -> int:
    """|N_G(H) / C_G(H)|."""
    return normalizer(G, H).order() // centralizer(G, H.generators).order()


def induced_automorphisms(G: GroupHandle, H: SubgroupRef) -> GroupHandle:
    """Aut_G(H) = N_G(H)/C_G(H), acting on the elements of H.

    Points are the positions of H's elements in its element table.

    Raises:
        CapExceededError: If |H| exceeds the enumeration cap
    """
    cap = active_caps().enumeration
    if H.order() > cap:
        raise CapExceededError("enumeration", cap, H.order())
    N = normalizer(G, H)
    degree = H.order()
    return GroupHandle(degree, _conjugation_action(H, N.generators), name="Aut_G(H)")


def check_indaut_lemma(G: GroupHandle, Q: SubgroupRef, group_name: str = "") -> CheckReport:
    """Compare Aut_G(Q) with Aut_Gbar(Qbar) for Gbar = G/R(G).

    Orders are always compared; isomorphism is tested when both sides fit
    under the isomorphism cap.

    Raises:
        NotAComponentError: If Q is not a component of G
    """
    if not any(Q == K for K in components(G).components):
        raise NotAComponentError(Q.order())
    R = soluble_radical(G)
    Gbar, pi = quotient_or_self(G, R)
    Qbar = pi.image(Q)
    top = induced_automorphism_order(G, Q)
    bottom = induced_automorphism_order(Gbar, Qbar)
    computed: dict[str, object] = {
        "aut_order": top,
        "aut_bar_order": bottom,
        "isomorphism_checked": False,
    }
    ok = top == bottom
    cap = active_caps().isomorphism
    if ok and top <= cap:
        iso = is_isomorphic_small(
            induced_automorphisms(G, Q), induced_automorphisms(Gbar, Qbar)
        )
        computed["isomorphism_checked"] = True
        computed["isomorphic"] = iso
        ok = iso
    return CheckReport(
        "indaut-lemma",
        group_name or G.name or "",
        inputs={"component_order": Q.order(), "radical_order": R.order()},
        computed=computed,
        status=verdict(ok),
        reason=None if ok else "induced automorphism groups differ",
    )


def check_generalized_fitting(G: GroupHandle, group_name: str = "") -> CheckReport:
    """C_G(F*) <= F*, C_G(F*) = Z(F) and [E, F] = 1."""
    Fstar = generalized_fitting(G)
    C = centralizer(G, Fstar.generators)
    F = fitting(G)
    E = layer(G)
    ZF = center_of_fitting(G)
    contained = C.is_subgroup_of(Fstar)
    equal_zf = C == ZF
    commute = all(e * f == f * e for e in E.generators for f in F.generators)
    ok = contained and equal_zf and commute
    return CheckReport(
        "generalized-fitting",
        group_name or G.name or "",
        inputs={"order": G.order()},
        computed={
            "fstar_order": Fstar.order(),
            "centralizer_order": C.order(),
            "z_fitting_order": ZF.order(),
            "layer_order": E.order(),
            "centralizer_contained": contained,
            "centralizer_is_z_fitting": equal_zf,
            "layer_commutes_with_fitting": commute,
        },
        status=verdict(ok),
        reason=None if ok else "generalized Fitting subgroup is not self-centralizing",
    )


def subnormal_quasisimple_bruteforce(G: GroupHandle) -> list[SubgroupRef]:
    """Every subnormal quasisimple subgroup, by descent through normal subgroups.

    Raises:
        CapExceededError: If |G| exceeds the brute-force cap
    """
    cap = active_caps().brute_components
    if G.order() > cap:
        raise CapExceededError("brute_components", cap, G.order())
    seen: dict[bytes, SubgroupRef] = {}
    found: dict[bytes, SubgroupRef] = {}
    stack = [SubgroupRef.whole(G)]
    while stack:
        K = stack.pop()
        key = np.packbits(K.mask()).tobytes()
        if key in seen:
            continue
        seen[key] = K
        K_group = K.as_group()
        if is_quasisimple(K_group):
            found[key] = K
        for N in normal_subgroups(K_group):
            if N.order() < K.order():
                stack.append(_in(G, N))
    return sorted(found.values(), key=lambda K: (K.order(), np.packbits(K.mask()).tobytes()))
