"""
Steinitz numbers: formal products of primes with exponents in {1, 2, ..., inf}.

They index the subfields of locally finite fields: GF(q^M) is a subfield of
GF(q^N) exactly when M divides N, and GF(q^N) is the union of the GF(q^d)
over the ordinary divisors d of N. Only numbers with finitely many primes in
their support are representable.

Example:
    >>> M = SteinitzNumber.parse("2^inf * 3")
    >>> print(M)
    2^inf * 3
    >>> SteinitzNumber.from_natural(12).divides(M)
    True
    >>> SteinitzNumber.from_natural(9).divides(M)
    False
    >>> SteinitzNumber.from_natural(24).divides(SteinitzNumber.parse("2^inf * 3^2"))
    True
    >>> print(evaluate("gcd(12, 18)"))
    2 * 3
    >>> evaluate("4 | 2^inf")
    True
"""

from __future__ import annotations

import logging
import math
import re
from collections.abc import Mapping
from itertools import product

from sortedcontainers import SortedDict
from sympy import factorint, isprime

from .exceptions import (
    InvalidParameterError,
    NotAPrimeError,
    NotAPrimePowerError,
    SteinitzFormatError,
)

logger = logging.getLogger(__name__)

INF = math.inf

Exponent = int | float


class SteinitzNumber:
    """A Steinitz number with finite support."""

    __slots__ = ("_support",)

    def __init__(self, support: Mapping[int, Exponent] | None = None) -> None:
        """Create a Steinitz number from a prime-to-exponent map.

        Zero exponents are dropped; ``math.inf`` is the infinite exponent.

        Raises:
            NotAPrimeError: If a key is not prime
            InvalidParameterError: If an exponent is negative or fractional
        """
        self._support: SortedDict = SortedDict()
        for p, e in (support or {}).items():
            if not isprime(p):
                raise NotAPrimeError(p)
            if e != INF and (e < 0 or int(e) != e):
                raise InvalidParameterError("exponent", e, "must be a natural number or inf")
            if e:
                self._support[int(p)] = INF if e == INF else int(e)

    @classmethod
    def from_natural(cls, n: int) -> SteinitzNumber:
        """The natural number n as a Steinitz number.

        Raises:
            InvalidParameterError: If n < 1
        """
        if n < 1:
            raise InvalidParameterError("n", n, "must be a positive integer")
        return cls(factorint(n))

    @classmethod
    def parse(cls, text: str) -> SteinitzNumber:
        """Parse ``p1^e1 * p2^e2 * ...`` with ``inf`` for an infinite exponent.

        Factors may repeat and plain integers are factored, so ``"12 * 2"``
        is ``2^3 * 3``.

        Raises:
            SteinitzFormatError: On malformed text
        """
        parser = _Parser(text)
        value = parser.number()
        parser.expect_end()
        return value

    @property
    def support(self) -> dict[int, Exponent]:
        return dict(self._support)

    def exponent(self, p: int) -> Exponent:
        return self._support.get(p, 0)  # type: ignore[no-any-return]

    def is_finite(self) -> bool:
        return all(e != INF for e in self._support.values())

    def to_natural(self) -> int:
        """The ordinary natural number, for finite Steinitz numbers.

        Raises:
            InvalidParameterError: If some exponent is infinite
        """
        if not self.is_finite():
            raise InvalidParameterError("steinitz", str(self), "has an infinite exponent")
        return math.prod(p**e for p, e in self._support.items())

    def divides(self, other: SteinitzNumber) -> bool:
        return all(e <= other.exponent(p) for p, e in self._support.items())

    def gcd(self, other: SteinitzNumber) -> SteinitzNumber:
        return SteinitzNumber({p: min(e, other.exponent(p)) for p, e in self._support.items()})

    def lcm(self, other: SteinitzNumber) -> SteinitzNumber:
        primes = set(self._support) | set(other._support)
        return SteinitzNumber({p: max(self.exponent(p), other.exponent(p)) for p in primes})

    def times(self, other: SteinitzNumber) -> SteinitzNumber:
        primes = set(self._support) | set(other._support)
        return SteinitzNumber({p: self.exponent(p) + other.exponent(p) for p in primes})

    def natural_divisors(self, limit: int) -> list[int]:
        """The ordinary natural numbers d <= limit dividing this number."""
        choices = []
        for p, e in self._support.items():
            powers = [1]
            while powers[-1] * p <= limit and len(powers) <= e:
                powers.append(powers[-1] * p)
            choices.append(powers)
        found = {math.prod(combo) for combo in product(*choices)}
        return sorted(d for d in found if d <= limit)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SteinitzNumber):
            return NotImplemented
        return dict(self._support) == dict(other._support)

    def __hash__(self) -> int:
        return hash(tuple(self._support.items()))

    def __str__(self) -> str:
        if not self._support:
            return "1"
        parts = []
        for p, e in self._support.items():
            if e == INF:
                parts.append(f"{p}^inf")
            elif e == 1:
                parts.append(str(p))
            else:
                parts.append(f"{p}^{e}")
        return " * ".join(parts)

    def __repr__(self) -> str:
        return f"SteinitzNumber({self})"


def gcd(*numbers: SteinitzNumber) -> SteinitzNumber:
    result = numbers[0]
    for n in numbers[1:]:
        result = result.gcd(n)
    return result


def lcm(*numbers: SteinitzNumber) -> SteinitzNumber:
    result = numbers[0]
    for n in numbers[1:]:
        result = result.lcm(n)
    return result


def _prime_power_base(q: int) -> int:
    factors = factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise NotAPrimePowerError(q)
    return int(next(iter(factors)))


def subfield_contains(q: int, M: SteinitzNumber, N: SteinitzNumber) -> bool:
    """Whether GF(q^M) is a subfield of GF(q^N).

    Raises:
        NotAPrimePowerError: If q is not a prime power
    """
    _prime_power_base(q)
    return M.divides(N)


def finite_subfield_orders(q: int, N: SteinitzNumber, limit: int) -> list[int]:
    """Orders q^d <= limit of the finite subfields GF(q^d) of GF(q^N)."""
    _prime_power_base(q)
    if q > limit:
        return []
    max_exponent = int(math.log(limit, q)) + 1
    return [q**d for d in N.natural_divisors(max_exponent) if q**d <= limit]


_TOKEN = re.compile(r"\s*(?:(\d+)|(inf|∞)|(gcd|lcm)|(\^|\*|\||\(|\)|,))")


class _Parser:
    """Recursive descent over ``A | B``, ``gcd(A, B)``, ``lcm(A, B)`` and products."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens: list[str] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            match = _TOKEN.match(stripped, pos)
            if not match:
                raise SteinitzFormatError(text, f"unexpected character at position {pos}")
            self.tokens.append(match.group(match.lastindex or 0))
            pos = match.end()
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        token = self.peek()
        if token is None or (expected is not None and token != expected):
            raise SteinitzFormatError(self.text, f"expected {expected or 'a term'}, got {token}")
        self.pos += 1
        return token

    def expect_end(self) -> None:
        if self.peek() is not None:
            raise SteinitzFormatError(self.text, f"trailing input at {self.peek()!r}")

    def expression(self) -> SteinitzNumber | bool:
        left = self.number()
        if self.peek() == "|":
            self.take("|")
            right = self.number()
            return left.divides(right)
        return left

    def number(self) -> SteinitzNumber:
        value = self.factor()
        while self.peek() == "*":
            self.take("*")
            value = value.times(self.factor())
        return value

    def factor(self) -> SteinitzNumber:
        token = self.take()
        if token in ("gcd", "lcm"):
            self.take("(")
            args = [self.number()]
            while self.peek() == ",":
                self.take(",")
                args.append(self.number())
            self.take(")")
            return gcd(*args) if token == "gcd" else lcm(*args)
        if token == "(":
            inner = self.number()
            self.take(")")
            return inner
        if not token.isdigit():
            raise SteinitzFormatError(self.text, f"unexpected {token!r}")
        base = int(token)
        if base < 1:
            raise SteinitzFormatError(self.text, "0 is not a Steinitz number")
        if self.peek() != "^":
            return SteinitzNumber.from_natural(base)
        self.take("^")
        if not isprime(base):
            raise SteinitzFormatError(self.text, f"exponent on non-prime {base}")
        exp_token = self.take()
        if exp_token in ("inf", "∞"):
            return SteinitzNumber({base: INF})
        if not exp_token.isdigit():
            raise SteinitzFormatError(self.text, f"bad exponent {exp_token!r}")
        return SteinitzNumber({base: int(exp_token)})


def evaluate(expr: str) -> SteinitzNumber | bool:
    """Evaluate ``A | B`` (divisibility), ``gcd(...)``, ``lcm(...)`` or a number.

    Raises:
        SteinitzFormatError: On malformed expressions
    """
    parser = _Parser(expr)
    if not parser.tokens:
        raise SteinitzFormatError(expr, "empty expression")
    result = parser.expression()
    parser.expect_end()
    return result
