"""Exact rational arithmetic relative to a finite set of primes S.

The scalar everywhere is ``fractions.Fraction`` (always reduced, positive
denominator), so equality and hashing are structural.  An ``SContext`` lists
the primes whose valuations are allowed to be nonzero; rationals split into
three classes relative to it: not an S-integer, an S-integer, or an S-unit
(denominator supported on S, respectively numerator and denominator both
supported on S).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import factorint, isprime

from .errors import EnumerationCapExceeded

Rational = Fraction

DEFAULT_ENUMERATION_CAP = 10**7


class SMembership(enum.Enum):
    NOT_S_INTEGER = "NotSInteger"
    S_INTEGER = "SInteger"
    S_UNIT = "SUnit"


@dataclass(frozen=True)
class SContext:
    """A finite set of primes, stored strictly increasing."""

    primes: tuple[int, ...]

    def __post_init__(self):
        for p in self.primes:
            if not isprime(p):
                raise ValueError(f"not a prime: {p}")
        if list(self.primes) != sorted(set(self.primes)):
            raise ValueError("primes must be strictly increasing and distinct")

    @classmethod
    def of(cls, *primes: int) -> "SContext":
        return cls(tuple(sorted(set(primes))))

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def with_primes(self, primes: Iterable[int]) -> "SContext":
        return SContext(tuple(sorted(set(self.primes) | set(primes))))

    def to_json(self) -> list[int]:
        return list(self.primes)


@dataclass(frozen=True)
class SUnit:
    """An S-unit in exponent form: sign * prod(p_i ** e_i) over S.primes."""

    sign: int
    exponents: tuple[int, ...]
    context: SContext

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if len(self.exponents) != len(self.context.primes):
            raise ValueError("exponent vector does not match context")

    def value(self) -> Fraction:
        v = Fraction(self.sign)
        for p, e in zip(self.context.primes, self.exponents):
            v *= Fraction(p) ** e
        return v

    @classmethod
    def from_rational(cls, x: Fraction, s: SContext) -> "SUnit":
        if s_membership(x, s) is not SMembership.S_UNIT:
            raise ValueError(f"{x} is not an S-unit for primes {s.primes}")
        exps = tuple(valuation(x, p) for p in s.primes)
        return cls(1 if x > 0 else -1, exps, s)


def valuation(x: Fraction | int, p: int) -> int:
    """p-adic valuation of a nonzero rational: v_p(num) - v_p(den)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero undefined")
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v


def _strip_primes(n: int, primes: Sequence[int]) -> int:
    n = abs(n)
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def s_membership(x: Fraction | int, s: SContext) -> SMembership:
    """Classify x relative to S without factoring anything outside S."""
    x = Fraction(x)
    den_rest = _strip_primes(x.denominator, s.primes)
    if den_rest != 1:
        return SMembership.NOT_S_INTEGER
    if x != 0 and _strip_primes(x.numerator, s.primes) == 1:
        return SMembership.S_UNIT
    return SMembership.S_INTEGER


def is_s_unit(x: Fraction | int, s: SContext) -> bool:
    return s_membership(x, s) is SMembership.S_UNIT


def is_s_integer(x: Fraction | int, s: SContext) -> bool:
    return s_membership(x, s) is not SMembership.NOT_S_INTEGER


def enumerate_s_units(
    s: SContext, bound: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[Fraction]:
    """All +-prod(p**e) with |e| <= bound, lexicographic on (sign, exponents).

    The sign -1 sorts before +1 and exponent vectors run from -bound to
    +bound componentwise, so the output order is a reproducible total order.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    total = 2 * (2 * bound + 1) ** len(s.primes)
    if total > cap:
        raise EnumerationCapExceeded(
            f"enumeration cap exceeded: {total} > {cap}"
        )
    out = []
    exp_range = range(-bound, bound + 1)
    for sign in (-1, 1):
        for exps in itertools.product(exp_range, repeat=len(s.primes)):
            v = Fraction(sign)
            for p, e in zip(s.primes, exps):
                v *= Fraction(p) ** e
            out.append(v)
    return out


def iter_s_unit_values(s: SContext, bound: int) -> "itertools.chain[Fraction]":
    """Same values as enumerate_s_units, produced lazily (no cap check)."""
    def gen():
        exp_range = range(-bound, bound + 1)
        for sign in (-1, 1):
            for exps in itertools.product(exp_range, repeat=len(s.primes)):
                v = Fraction(sign)
                for p, e in zip(s.primes, exps):
                    v *= Fraction(p) ** e
                yield v
    return gen()


def max_abs_exponent(x: Fraction, s: SContext) -> int:
    """Largest |v_p(x)| over p in S, for an S-unit x."""
    return max((abs(valuation(x, p)) for p in s.primes), default=0)


def primes_of(x: Fraction | int) -> frozenset[int]:
    """All primes dividing the numerator or denominator of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("cannot factor zero")
    ps = set(factorint(abs(x.numerator)))
    ps |= set(factorint(x.denominator))
    return frozenset(ps)


def extend_s(s: SContext, values: Sequence[Fraction | int]) -> SContext:
    """Adjoin to S every prime dividing a numerator or denominator in values."""
    new = set()
    for v in values:
        new |= primes_of(v)
    return s.with_primes(new)


def rational_from_str(text: str) -> Fraction:
    """Parse 'num/den' or 'num' decimal strings."""
    return Fraction(text.strip())


def rational_to_str(x: Fraction) -> str:
    return str(x)
