"""Exact projective geometry over Q.

Points and hyperplanes are kept in a canonical integer form (coprime entries,
first nonzero entry positive), which makes projective equality structural.
S-integrality of a point relative to a hyperplane arrangement follows the
global convention available over a principal ring: evaluate each normalized
hyperplane on the normalized point and ask for an S-unit.  The local
reduction-mod-p characterization is also provided so the two can be checked
against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .sarith import SContext, is_s_unit, primes_of


def _canonical_int_vector(raw: Sequence[Fraction | int]) -> tuple[int, ...]:
    vals = [Fraction(x) for x in raw]
    if all(v == 0 for v in vals):
        raise ValueError("not a projective point")
    den_lcm = math.lcm(*(v.denominator for v in vals))
    ints = [int(v * den_lcm) for v in vals]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    first = next(c for c in ints if c != 0)
    if first < 0:
        ints = [-c for c in ints]
    return tuple(ints)


@dataclass(frozen=True)
class ProjPoint:
    """Point of P^n(Q): coprime integer coordinates, first nonzero positive."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if self.coords != _canonical_int_vector(self.coords):
            raise ValueError(f"non-canonical coordinates: {self.coords}")

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ":".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Hyperplane:
    """Hyperplane a0*X0 + ... + an*Xn = 0 in canonical integer form."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs != _canonical_int_vector(self.coeffs):
            raise ValueError(f"non-canonical coefficients: {self.coeffs}")

    @classmethod
    def of(cls, *coeffs: Fraction | int) -> "Hyperplane":
        return cls(_canonical_int_vector(coeffs))

    def evaluate(self, point: ProjPoint) -> int:
        if len(self.coeffs) != len(point.coords):
            raise ValueError("dimension mismatch")
        return sum(a * x for a, x in zip(self.coeffs, point.coords))

    def contains(self, point: ProjPoint) -> bool:
        return self.evaluate(point) == 0

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


@dataclass(frozen=True)
class ResiduePoint:
    """Reduction of a point modulo p, scaled so the first nonzero residue is 1."""

    modulus: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if all(c % self.modulus == 0 for c in self.coords):
            raise ValueError("zero residue vector")


def normalize(raw: Sequence[Fraction | int]) -> ProjPoint:
    """Canonical representative of the projective class of a rational vector."""
    return ProjPoint(_canonical_int_vector(raw))


def reduce_mod_p(point: ProjPoint, p: int) -> ResiduePoint:
    """Reduce modulo p after scaling by a coordinate of maximal |.|_p.

    On canonical coordinates the entries are coprime, so some coordinate is a
    p-adic unit; dividing by it puts every coordinate in Z_p and the residue
    vector is nonzero.
    """
    pivot = next(c for c in point.coords if c % p != 0)
    inv = pow(pivot % p, -1, p)
    residues = [(c * inv) % p for c in point.coords]
    lead = next(r for r in residues if r != 0)
    scale = pow(lead, -1, p)
    return ResiduePoint(p, tuple((r * scale) % p for r in residues))


def reduce_hyperplane_mod_p(h: Hyperplane, p: int) -> tuple[int, ...]:
    """Residues of the canonical coefficients; nonzero since they are coprime."""
    return tuple(c % p for c in h.coeffs)


def residue_on_hyperplane(rp: ResiduePoint, h: Hyperplane) -> bool:
    hp = reduce_hyperplane_mod_p(h, rp.modulus)
    return sum(a * x for a, x in zip(hp, rp.coords)) % rp.modulus == 0


def is_s_integral(
    point: ProjPoint, arrangement: Sequence[Hyperplane], s: SContext
) -> bool:
    """True iff every arrangement hyperplane evaluates to an S-unit on the point.

    Z is principal, so this single global test agrees with the place-by-place
    definition (each evaluation must be a p-adic unit for every p outside S).
    """
    if not arrangement:
        raise ValueError("arrangement must be nonempty")
    result = True
    for h in arrangement:
        value = h.evaluate(point)
        if value == 0:
            raise ValueError("point on removed divisor")
        if not is_s_unit(Fraction(value), s):
            result = False
    return result


def is_s_integral_local(
    point: ProjPoint, arrangement: Sequence[Hyperplane], s: SContext
) -> bool:
    """Place-by-place variant: reductions avoid every reduced hyperplane.

    Only primes dividing some evaluation can fail, so the check is finite.
    """
    if not arrangement:
        raise ValueError("arrangement must be nonempty")
    values = [h.evaluate(point) for h in arrangement]
    if any(v == 0 for v in values):
        raise ValueError("point on removed divisor")
    candidates = set()
    for v in values:
        candidates |= primes_of(v)
    for p in candidates - set(s.primes):
        rp = reduce_mod_p(point, p)
        if any(residue_on_hyperplane(rp, h) for h in arrangement):
            return False
    return True


def change_coordinates(
    point: ProjPoint, m: Sequence[Sequence[Fraction | int]]
) -> tuple[ProjPoint, frozenset[int]]:
    """Apply an invertible rational matrix and report the primes to adjoin to S.

    The delta is the set of primes dividing the determinant (numerator or
    denominator) or any entry denominator; extending S by it preserves
    S-integrality with respect to the transformed arrangement.
    """
    mat = linalg.as_matrix(m)
    d = linalg.det(mat)
    if d == 0:
        raise ValueError("singular matrix")
    delta = set(primes_of(d))
    for row in mat:
        for entry in row:
            if entry.denominator != 1:
                delta |= primes_of(entry.denominator)
    new_point = normalize(linalg.matvec(mat, point.coords))
    return new_point, frozenset(delta)


def transform_hyperplane(
    h: Hyperplane, m: Sequence[Sequence[Fraction | int]]
) -> Hyperplane:
    """Image of a hyperplane under the point transformation y = M x."""
    inv = linalg.inverse(linalg.as_matrix(m))
    new_coeffs = linalg.matvec(linalg.transpose(inv), h.coeffs)
    return Hyperplane.of(*new_coeffs)


def quadratic_embed(a: ProjPoint, b: ProjPoint) -> ProjPoint:
    """Segre-style embedding of P1 x P1 into P3 on the surface T0*T3 = T1*T2."""
    if a.dim != 1 or b.dim != 1:
        raise ValueError("arguments must be points of P1")
    (x0, x1), (y0, y1) = a.coords, b.coords
    return normalize((x0 * y0, x1 * y0, x0 * y1, x1 * y1))
