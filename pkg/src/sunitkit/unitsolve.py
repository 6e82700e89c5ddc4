"""Solvers and constructions for vanishing sums of S-units.

A solution of E_0 + ... + E_{n+1} = 0 in S-units is stored as a ``UnitTuple``;
two solutions are equivalent when one is a common S-unit multiple of the
other, and dividing through by the first entry picks the canonical class
representative.  ``solve_unit_equation(n, ...)`` enumerates the classes of
(n+2)-term solutions (the homogeneous equation behind the S-integral points
of P^n minus the standard n+2 hyperplanes); the two-term inhomogeneous
equation E_1 + E_2 = 1 is the n=1 case via the tuple (E_1, E_2, -1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import EnumerationCapExceeded, InternalConsistencyError
from .sarith import (
    DEFAULT_ENUMERATION_CAP,
    SContext,
    SMembership,
    extend_s,
    is_s_unit,
    max_abs_exponent,
    s_membership,
)


@dataclass(frozen=True)
class UnitTuple:
    """A tuple of S-units summing to exactly zero."""

    entries: tuple[Fraction, ...]
    context: SContext

    def __post_init__(self):
        if len(self.entries) < 2:
            raise ValueError("need at least two entries")
        if sum(self.entries) != 0:
            raise ValueError("entries do not sum to zero")
        for e in self.entries:
            if not is_s_unit(e, self.context):
                raise ValueError(f"entry {e} is not an S-unit for {self.context.primes}")

    def to_json(self) -> dict:
        return {
            "entries": [str(e) for e in self.entries],
            "primes": self.context.to_json(),
        }


@dataclass(frozen=True)
class ClassRep:
    """Class representative modulo S-units: the unique scaling with entry 0 == 1."""

    tuple: UnitTuple

    def __post_init__(self):
        if self.tuple.entries[0] != 1:
            raise ValueError("class representative must start with 1")

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self.tuple.entries


def unit_tuple(entries: Sequence[Fraction | int], s: SContext) -> UnitTuple:
    return UnitTuple(tuple(Fraction(e) for e in entries), s)


def normalize_class(t: UnitTuple) -> ClassRep:
    """Divide by the first entry; the quotient of S-units is an S-unit."""
    lead = t.entries[0]
    return ClassRep(UnitTuple(tuple(e / lead for e in t.entries), t.context))


def vanishing_subsums(
    values: Sequence[Fraction | int], min_size: int = 2
) -> tuple[tuple[int, ...], ...]:
    """Index subsets I with min_size <= |I| <= len-1 whose entries sum to zero.

    The default min_size 2 matches the non-degeneracy condition on solutions;
    min_size 1 additionally rejects zero entries, which is the stronger
    hypothesis used for the line-trace bound.
    """
    if len(values) < 2:
        raise ValueError("need at least two values")
    vals = [Fraction(v) for v in values]
    n = len(vals)
    found = []
    for size in range(min_size, n):
        for idx in itertools.combinations(range(n), size):
            if sum(vals[i] for i in idx) == 0:
                found.append(idx)
    return tuple(found)


def is_degenerate(values: Sequence[Fraction | int]) -> bool:
    return bool(vanishing_subsums(values, min_size=2))


def _sort_key(entries: tuple[Fraction, ...]):
    return tuple((e.numerator, e.denominator) for e in entries)


def solve_unit_equation(
    n: int,
    s: SContext,
    bound: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> tuple[ClassRep, ...]:
    """All non-degenerate classes of (n+2)-term vanishing sums of S-units.

    Enumerates normalized tuples directly: the first entry is 1, the next n
    entries range over S-units with exponent vectors in the +-bound box, and
    the last entry is forced by the zero sum.  A candidate is kept when the
    forced entry is an S-unit that also fits the box and no proper subsum of
    the tuple vanishes.  Output is sorted, one representative per class.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if bound < 0:
        raise ValueError("bound must be >= 0")
    per_slot = 2 * (2 * bound + 1) ** len(s.primes)
    results: list[ClassRep] = []
    count = 0
    free_slots = n

    def free_values():
        exp_range = range(-bound, bound + 1)
        for sign in (-1, 1):
            for exps in itertools.product(exp_range, repeat=len(s.primes)):
                v = Fraction(sign)
                for p, e in zip(s.primes, exps):
                    v *= Fraction(p) ** e
                yield v

    for combo in itertools.product(*(free_values() for _ in range(free_slots))):
        count += 1
        if count > cap:
            raise EnumerationCapExceeded(
                f"enumeration cap exceeded after {cap} candidates "
                f"(of {per_slot ** free_slots})",
                partial=tuple(sorted(results, key=lambda c: _sort_key(c.entries))),
            )
        last = -(1 + sum(combo))
        if last == 0 or not is_s_unit(last, s):
            continue
        if max_abs_exponent(last, s) > bound:
            continue
        entries = (Fraction(1),) + combo + (last,)
        if vanishing_subsums(entries, min_size=2):
            continue
        results.append(ClassRep(UnitTuple(entries, s)))
    return tuple(sorted(results, key=lambda c: _sort_key(c.entries)))


def lift_gamma(
    base: ClassRep | UnitTuple,
    gamma: Fraction | int,
    t: int,
    s: SContext,
) -> UnitTuple:
    """Stretch a vanishing sum by t extra terms using a non-unit S-integer gamma.

    The last base entry eps splits as (gamma - t)*eps + t copies of eps while
    the earlier entries are scaled by gamma; the result lives over S extended
    by the primes of gamma*(gamma - t).  The preconditions (gamma an S-integer
    that is not a unit, r/gamma outside O_S for r = 1..t) force the output to
    be non-degenerate; that is re-verified and a failure is an internal error.
    """
    base_tuple = base.tuple if isinstance(base, ClassRep) else base
    gamma = Fraction(gamma)
    if t < 1:
        raise ValueError("t must be >= 1")
    if gamma == 0:
        raise ValueError("invalid gamma: zero")
    membership = s_membership(gamma, s)
    if membership is not SMembership.S_INTEGER:
        raise ValueError("invalid gamma: must be an S-integer that is not an S-unit")
    for r in range(1, t + 1):
        if s_membership(Fraction(r) / gamma, s) is not SMembership.NOT_S_INTEGER:
            raise ValueError(f"invalid gamma: {r}/gamma is an S-integer")
    if vanishing_subsums(base_tuple.entries, min_size=2):
        raise ValueError("base tuple is degenerate")

    s_prime = extend_s(s, [gamma * (gamma - t)])
    *head, tail = base_tuple.entries
    entries = tuple(gamma * e for e in head) + ((gamma - t) * tail,) + (tail,) * t
    lifted = UnitTuple(entries, s_prime)
    if vanishing_subsums(entries, min_size=2):
        raise InternalConsistencyError(
            "gamma lift produced a degenerate tuple despite valid preconditions"
        )
    return lifted


def binomial_expansion_terms(eps: Fraction | int, m: int) -> tuple[Fraction, ...]:
    """Terms ((1-eps)^m, C(m,1) eps, -C(m,2) eps^2, ..., -1) summing to zero.

    Rearranges (1-eps)^m = sum_j (-1)^j C(m,j) eps^j; the identity holds for
    every rational eps, not only S-units.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    eps = Fraction(eps)
    terms = [(1 - eps) ** m]
    for j in range(1, m + 1):
        terms.append((-1) ** (j + 1) * comb(m, j) * eps**j)
    terms.append(Fraction(-1))
    return tuple(terms)


def lift_binomial(
    eps: Fraction | int, m: int, s: SContext
) -> tuple[UnitTuple, bool]:
    """Expand a two-term unit solution into an (m+2)-term one, flagging degeneracy.

    Requires eps and 1-eps to be S-units; the binomial coefficients C(m,1) ..
    C(m,m-1) are adjoined to S so every term is a unit over the extension.
    The degenerate flag marks tuples with a vanishing proper subsum (the
    finitely many exceptional eps); they are reported, never dropped.
    """
    eps = Fraction(eps)
    if not is_s_unit(eps, s):
        raise ValueError("eps must be an S-unit")
    if not is_s_unit(1 - eps, s):
        raise ValueError("1 - eps must be an S-unit")
    s_prime = extend_s(s, [comb(m, j) for j in range(1, m)])
    terms = binomial_expansion_terms(eps, m)
    lifted = UnitTuple(terms, s_prime)
    return lifted, is_degenerate(terms)
