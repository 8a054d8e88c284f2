"""
Constructors for the test corpus and ingestion of group files.

Matrix groups are realized as permutation groups: GL(n, q) and SL(n, q) on
the q^n - 1 nonzero row vectors (acting by v -> vA), PSL(n, q) on the
projective points. Vectors are numbered lexicographically with field
elements encoded as 0..q-1; for q in {4, 8, 9} an element is the integer
whose base-p digits are its polynomial coefficients, constant term first.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Any

import numpy as np
from sympy import factorint, isprime
from sympy.combinatorics import Permutation
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from .config import active_caps
from .cycles import identity_permutation, parse_group_text, read_group_file
from .exceptions import (
    InvalidParameterError,
    NotAHomomorphismError,
    NotAPrimeError,
    NotAPrimePowerError,
)
from .permcore import GroupHandle, Homomorphism, SubgroupRef, direct_product
from .subgrp import is_simple, is_soluble

logger = logging.getLogger(__name__)

# Irreducible moduli (highest coefficient first) for the non-prime fields.
_MODULI = {4: [1, 1, 1], 8: [1, 0, 1, 1], 9: [1, 2, 2]}


def make_symmetric(n: int) -> GroupHandle:
    """Sym(n) on n points."""
    if n < 1:
        raise InvalidParameterError("n", n, "must be at least 1")
    if n == 1:
        return GroupHandle(1, [], name="S1")
    gens = [Permutation([[0, 1]], size=n)]
    if n > 2:
        gens.append(Permutation([list(range(n))], size=n))
    return GroupHandle(n, gens, name=f"S{n}")


def make_alternating(n: int) -> GroupHandle:
    """Alt(n) on n points."""
    if n < 1:
        raise InvalidParameterError("n", n, "must be at least 1")
    if n < 3:
        return GroupHandle(n, [], name=f"A{n}")
    gens = [Permutation([[0, 1, 2]], size=n)]
    if n > 3:
        cycle = list(range(n)) if n % 2 else list(range(1, n))
        gens.append(Permutation([cycle], size=n))
    return GroupHandle(n, gens, name=f"A{n}")


def make_cyclic(n: int) -> GroupHandle:
    """C_n generated by an n-cycle."""
    if n < 1:
        raise InvalidParameterError("n", n, "must be at least 1")
    if n == 1:
        return GroupHandle(1, [], name="C1")
    return GroupHandle(n, [Permutation([list(range(n))], size=n)], name=f"C{n}")


def make_dihedral(n: int) -> GroupHandle:
    """Dihedral group of order 2n acting on the n vertices of an n-gon."""
    if n < 3:
        raise InvalidParameterError("n", n, "must be at least 3")
    rotation = Permutation([list(range(n))], size=n)
    reflection = Permutation([(-i) % n for i in range(n)])
    return GroupHandle(n, [rotation, reflection], name=f"D{2 * n}")


def make_elementary_abelian(p: int, k: int) -> GroupHandle:
    """(C_p)^k as k disjoint p-cycles on p*k points."""
    if not isprime(p):
        raise NotAPrimeError(p)
    if k < 1:
        raise InvalidParameterError("k", k, "must be at least 1")
    degree = p * k
    gens = [Permutation([list(range(i * p, (i + 1) * p))], size=degree) for i in range(k)]
    name = f"C{p}" if k == 1 else f"C{p}^{k}"
    return GroupHandle(degree, gens, name=name)


def make_quaternion() -> GroupHandle:
    """Q8 in its right regular representation on 8 points."""
    text = resources.files("centra").joinpath("data/groups/q8.grp").read_text("utf-8")
    parsed = parse_group_text(text)
    return GroupHandle(parsed.degree, parsed.generators, name="Q8")


def make_mathieu11() -> GroupHandle:
    """M11 on 11 points."""
    text = resources.files("centra").joinpath("data/groups/m11.grp").read_text("utf-8")
    parsed = parse_group_text(text)
    return GroupHandle(parsed.degree, parsed.generators, name="M11")


@dataclass(frozen=True)
class FiniteField:
    """GF(q) through addition and multiplication tables on 0..q-1."""

    q: int
    p: int
    k: int
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)
    primitive: int = 0

    def basis(self) -> list[int]:
        """omega^0, ..., omega^(k-1): an additive basis over GF(p)."""
        powers = [1]
        for _ in range(self.k - 1):
            powers.append(int(self.mul[powers[-1], self.primitive]))
        return powers


def _digits(a: int, p: int, k: int) -> list[int]:
    return [(a // p**i) % p for i in range(k)]


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    """Tables for GF(q), q prime or q in {4, 8, 9}.

    Raises:
        NotAPrimePowerError: If q is not a prime power
        InvalidParameterError: If q is a prime power without a stored modulus
    """
    factors = factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise NotAPrimePowerError(q)
    ((p, k),) = factors.items()
    values = np.arange(q)
    if k == 1:
        add = (values[:, None] + values[None, :]) % q
        mul = (values[:, None] * values[None, :]) % q
    else:
        if q not in _MODULI:
            raise InvalidParameterError("q", q, "only prime fields and q in 4, 8, 9")
        modulus = _MODULI[q]
        assert gf_irreducible_p(modulus, p, ZZ)
        digits = [_digits(a, p, k) for a in range(q)]

        def add_digits(da: list[int], db: list[int]) -> int:
            pairs = zip(da, db, strict=True)
            return sum(((x + y) % p) * p**i for i, (x, y) in enumerate(pairs))

        add = np.array([[add_digits(da, db) for db in digits] for da in digits])
        mul = np.zeros((q, q), dtype=np.int64)
        for a, b in product(range(q), repeat=2):
            fa = list(reversed(digits[a]))
            fb = list(reversed(digits[b]))
            prod = gf_rem(gf_mul(fa, fb, p, ZZ), modulus, p, ZZ)
            mul[a, b] = sum(int(c) * p**i for i, c in enumerate(reversed(prod)))
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
    primitive = 0
    for a in range(1, q):
        x, order = a, 1
        while x != 1:
            x = int(mul[x, a])
            order += 1
        if order == q - 1:
            primitive = a
            break
    return FiniteField(q, int(p), int(k), add, mul, inv, primitive)


def gl_order(n: int, q: int) -> int:
    return math.prod(q**n - q**i for i in range(n))


def sl_order(n: int, q: int) -> int:
    return gl_order(n, q) // (q - 1)


def psl_order(n: int, q: int) -> int:
    return sl_order(n, q) // math.gcd(n, q - 1)


def _row_action(F: FiniteField, vectors: np.ndarray, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    out = np.zeros_like(vectors)
    for j in range(n):
        acc = np.zeros(vectors.shape[0], dtype=np.int64)
        for i in range(n):
            acc = F.add[acc, F.mul[vectors[:, i], A[i, j]]]
        out[:, j] = acc
    return out


def _encode(vectors: np.ndarray, q: int) -> np.ndarray:
    n = vectors.shape[1]
    weights = q ** np.arange(n - 1, -1, -1)
    return vectors @ weights


def _normalize(F: FiniteField, vectors: np.ndarray) -> np.ndarray:
    lead_pos = np.argmax(vectors != 0, axis=1)
    lead = vectors[np.arange(len(vectors)), lead_pos]
    return F.mul[vectors, F.inv[lead][:, None]]


def _linear_generators(F: FiniteField, n: int, *, with_diagonal: bool) -> list[np.ndarray]:
    gens = []
    for i, j in product(range(n), repeat=2):
        if i == j:
            continue
        for a in F.basis():
            A = np.eye(n, dtype=np.int64)
            A[i, j] = a
            gens.append(A)
    if with_diagonal and F.q > 2:
        D = np.eye(n, dtype=np.int64)
        D[0, 0] = F.primitive
        gens.append(D)
    return gens


def _check_degree(degree: int) -> None:
    limit = active_caps().quotient
    if degree > limit:
        raise InvalidParameterError("degree", degree, f"exceeds the {limit} point limit")


def _linear_group(n: int, q: int, *, kind: str) -> GroupHandle:
    if n < 1:
        raise InvalidParameterError("n", n, "must be at least 1")
    F = finite_field(q)
    all_vectors = np.array(list(product(range(q), repeat=n)), dtype=np.int64)[1:]
    if kind == "PSL":
        points = np.unique(_normalize(F, all_vectors), axis=0)
    else:
        points = all_vectors
    _check_degree(len(points))
    lookup = np.full(q**n, -1, dtype=np.int64)
    lookup[_encode(points, q)] = np.arange(len(points))
    perms = []
    for A in _linear_generators(F, n, with_diagonal=kind == "GL"):
        image = _row_action(F, points, A)
        if kind == "PSL":
            image = _normalize(F, image)
        perms.append(Permutation([int(x) for x in lookup[_encode(image, q)]]))
    logger.debug("%s(%d,%d) on %d points with %d generators", kind, n, q, len(points), len(perms))
    return GroupHandle(len(points), perms, name=f"{kind}({n},{q})")


def make_gl(n: int, q: int) -> GroupHandle:
    """GL(n, q) on the nonzero vectors of GF(q)^n."""
    return _linear_group(n, q, kind="GL")


def make_sl(n: int, q: int) -> GroupHandle:
    """SL(n, q) on the nonzero vectors of GF(q)^n."""
    return _linear_group(n, q, kind="SL")


def make_psl(n: int, q: int) -> GroupHandle:
    """PSL(n, q) on the points of the projective space PG(n-1, q)."""
    return _linear_group(n, q, kind="PSL")


@dataclass(frozen=True)
class AffineAction:
    """Q ⋊ E acting on the elements of Q.

    Attributes:
        group: The semidirect product
        Q: The normal regular subgroup (right translations)
        E: The complement (automorphisms, fixing the identity point)
        p: Prime with |E| = p^n (0 when E is trivial)
        n: Rank of E as an elementary abelian group
    """

    group: GroupHandle
    Q: SubgroupRef
    E: SubgroupRef
    p: int
    n: int


def make_affine_action(
    automorphisms: Sequence[Sequence[Permutation]], Q: GroupHandle, name: str | None = None
) -> AffineAction:
    """Build Q ⋊ E inside Sym(|Q|).

    Args:
        automorphisms: One entry per generator of E: the images of Q's
            generators under that automorphism
        Q: The group acted on
        name: Name of the result

    Raises:
        NotAHomomorphismError: If a map is not an automorphism of Q
    """
    table = Q.table()
    size = table.size
    translations = []
    for g in Q.generators:
        row = table.rows[table.index_of(g)]
        translations.append(Permutation([int(i) for i in table.lookup(row[table.rows])]))
    autos = []
    for images in automorphisms:
        alpha = Homomorphism.from_generator_images(Q, Q, list(images))
        if not alpha.is_injective():
            raise NotAHomomorphismError("map is not bijective")
        perm = Permutation([int(i) for i in alpha.image_index])
        if not perm.is_Identity:
            autos.append(perm)
    group = GroupHandle(size, [*translations, *autos], name=name)
    E = SubgroupRef(group, autos, _check=False)
    order = E.order()
    factors = factorint(order) if order > 1 else {}
    p, n = next(iter(factors.items())) if len(factors) == 1 else (0, 0)
    return AffineAction(group, SubgroupRef(group, translations, _check=False), E, int(p), int(n))


def _coordinate_inversions(k: int) -> tuple[GroupHandle, list[list[Permutation]]]:
    Q = make_elementary_abelian(3, k)
    gens = list(Q.generators)
    autos = [[~g if i == j else g for j, g in enumerate(gens)] for i in range(k)]
    return Q, autos


def _power_map(n: int, exponent: int) -> tuple[GroupHandle, list[list[Permutation]]]:
    Q = make_cyclic(n)
    (a,) = Q.generators
    return Q, [[a**exponent]]


_AutomorphismMaker = Callable[[], tuple[GroupHandle, list[list[Permutation]]]]


def khukhro_actions() -> list[tuple[str, Callable[[], AffineAction]]]:
    """Faithful actions of elementary abelian p-groups on p'-groups."""

    def v4_rotation() -> AffineAction:
        Q = make_elementary_abelian(2, 2)
        a, b = Q.generators
        return make_affine_action([[b, a * b]], Q, name="C2^2:C3")

    def build(name: str, automorphisms: _AutomorphismMaker) -> Callable[[], AffineAction]:
        def make() -> AffineAction:
            Q, autos = automorphisms()
            return make_affine_action(autos, Q, name=name)

        return make

    return [
        ("C3:C2", build("C3:C2", lambda: _coordinate_inversions(1))),
        ("C3^2:C2^2", build("C3^2:C2^2", lambda: _coordinate_inversions(2))),
        ("C2^2:C3", v4_rotation),
        ("C3^3:C2^3", build("C3^3:C2^3", lambda: _coordinate_inversions(3))),
        ("C7:C3", build("C7:C3", lambda: _power_map(7, 2))),
        ("C11:C5", build("C11:C5", lambda: _power_map(11, 3))),
        ("C5:C2", build("C5:C2", lambda: _power_map(5, 4))),
    ]


@dataclass
class CorpusEntry:
    """A named corpus group with the facts known about it in advance."""

    name: str
    builder: str
    group: GroupHandle
    annotations: dict[str, Any] = field(default_factory=dict)
    affine: AffineAction | None = None

    def check_annotations(self) -> list[str]:
        """Names of annotations the group contradicts."""

        wrong = []
        if "order" in self.annotations and self.group.order() != self.annotations["order"]:
            wrong.append("order")
        if "soluble" in self.annotations and is_soluble(self.group) != self.annotations["soluble"]:
            wrong.append("soluble")
        if "simple" in self.annotations and is_simple(self.group) != self.annotations["simple"]:
            wrong.append("simple")
        return wrong


def _entry(
    group: GroupHandle, builder: str, order: int, *, soluble: bool, simple: bool
) -> CorpusEntry:
    name = group.name or builder
    return CorpusEntry(name, builder, group, {"order": order, "soluble": soluble, "simple": simple})


def _product(G: GroupHandle, H: GroupHandle, name: str) -> GroupHandle:
    P = direct_product(G, H)
    P.name = name
    return P


@lru_cache(maxsize=1)
def _default_entries() -> tuple[CorpusEntry, ...]:
    entries: list[CorpusEntry] = []
    for n in range(1, 13):
        entries.append(
            _entry(make_cyclic(n), f"cyclic({n})", n, soluble=True, simple=isprime(n))
        )
    for p, k in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2)]:
        entries.append(
            _entry(make_elementary_abelian(p, k), f"elementary_abelian({p},{k})", p**k, soluble=True, simple=False)
        )
    for n in range(3, 7):
        entries.append(_entry(make_dihedral(n), f"dihedral({n})", 2 * n, soluble=True, simple=False))
    for n in range(3, 7):
        entries.append(
            _entry(make_symmetric(n), f"symmetric({n})", math.factorial(n), soluble=n <= 4, simple=False)
        )
    for n in range(3, 8):
        entries.append(
            _entry(make_alternating(n), f"alternating({n})", math.factorial(n) // 2, soluble=n <= 4, simple=n != 4)
        )
    entries.append(_entry(make_quaternion(), "quaternion", 8, soluble=True, simple=False))
    for kind, n, q, soluble, simple in [
        ("SL", 2, 3, True, False),
        ("SL", 2, 5, False, False),
        ("GL", 2, 2, True, False),
        ("GL", 2, 3, True, False),
        ("GL", 3, 2, False, True),
        ("GL", 2, 5, False, False),
    ]:
        maker = make_sl if kind == "SL" else make_gl
        order = sl_order(n, q) if kind == "SL" else gl_order(n, q)
        entries.append(_entry(maker(n, q), f"{kind.lower()}({n},{q})", order, soluble=soluble, simple=simple))
    for n, q in [(2, 4), (2, 5), (2, 7), (2, 8), (2, 9), (2, 11), (2, 13), (3, 2)]:
        entries.append(_entry(make_psl(n, q), f"psl({n},{q})", psl_order(n, q), soluble=False, simple=True))
    products = [
        (lambda: _product(make_symmetric(4), make_alternating(5), "S4xA5"), 1440),
        (lambda: _product(make_sl(2, 5), make_cyclic(7), "SL(2,5)xC7"), 840),
        (lambda: _product(make_alternating(5), make_alternating(5), "A5xA5"), 3600),
        (lambda: _product(make_alternating(5), make_cyclic(6), "A5xC6"), 360),
    ]
    for build, order in products:
        G = build()
        entries.append(_entry(G, "direct_product", order, soluble=False, simple=False))
    for name, make in khukhro_actions():
        action = make()
        entry = CorpusEntry(
            name,
            "affine_action",
            action.group,
            {"order": action.group.order(), "soluble": True, "simple": False},
            affine=action,
        )
        entries.append(entry)
    entries.append(_entry(make_mathieu11(), "mathieu11", 7920, soluble=False, simple=True))
    return tuple(entries)


def corpus_default() -> list[CorpusEntry]:
    """The built-in corpus, in its fixed declared order."""
    return list(_default_entries())


def corpus_by_name(name: str, corpus: Sequence[CorpusEntry] | None = None) -> CorpusEntry:
    """Look up a corpus entry by name.

    Raises:
        InvalidParameterError: If no entry has that name
    """
    for entry in corpus if corpus is not None else corpus_default():
        if entry.name == name:
            return entry
    raise InvalidParameterError("name", name, "not in the corpus")


def load_group(path: str | Path) -> GroupHandle:
    """Read a group file.

    Raises:
        GroupFormatError: With the line number of the offending line
    """
    path = Path(path)
    parsed = read_group_file(path)
    gens = list(parsed.generators) or [identity_permutation(parsed.degree)]
    return GroupHandle(parsed.degree, gens, name=parsed.name or path.stem)


def load_corpus_dir(path: str | Path) -> list[CorpusEntry]:
    """Every ``*.grp`` file of a directory, sorted by file name."""
    entries = []
    for file in sorted(Path(path).glob("*.grp")):
        G = load_group(file)
        entries.append(CorpusEntry(G.name or file.stem, f"file:{file.name}", G))
    return entries
