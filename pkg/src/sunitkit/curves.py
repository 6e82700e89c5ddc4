"""Bounded enumerators for six classical Diophantine equation families over Z.

Each family states a finiteness theorem; the enumerators exhaust a box and
return every exact solution in it, so stability of the output under doubling
the box is the desk-scale signal that the finite set has been captured.
Validity checks on the defining data (distinct roots, simple roots,
multiplicities prime to the exponent) are exact, via resultants and
polynomial gcds over Q, never floating point.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import Poly, Rational, gcd as sym_gcd, integer_nthroot, symbols

from .errors import EnumerationCapExceeded
from .sarith import DEFAULT_ENUMERATION_CAP, SContext, is_s_unit

_X = symbols("x")


class Family(enum.Enum):
    MORDELL = "mordell"
    ELLIPTIC = "elliptic"
    HYPERELLIPTIC = "hyperelliptic"
    SUPERELLIPTIC = "superelliptic"
    THUE_CLASSIC = "thue"
    SIEGEL_UNITS = "siegel"


def _poly(coeffs: Sequence[Fraction]) -> Poly:
    return Poly([Rational(c.numerator, c.denominator) for c in coeffs], _X)


def _count_simple_roots(coeffs: Sequence[Fraction]) -> int:
    f = _poly(coeffs)
    g = sym_gcd(f, f.diff(_X))
    radical = f.div(g)[0]
    repeated = sym_gcd(radical, g)
    return radical.degree() - repeated.degree()


@dataclass(frozen=True)
class CurveSpec:
    """One instance of a family, with exact family-specific validity checks."""

    family: Family
    k: Fraction | None = None
    coeffs: tuple[Fraction, ...] | None = None
    m: int | None = None
    roots: tuple[Fraction, ...] | None = None
    a1: Fraction | None = None
    a2: Fraction | None = None
    s: SContext | None = None

    def __post_init__(self):
        fam = self.family
        if fam is Family.MORDELL:
            if not self.k:
                raise ValueError("Mordell requires k != 0")
        elif fam is Family.ELLIPTIC:
            f = self._coeffs_poly()
            if f.degree() != 3:
                raise ValueError("elliptic requires a cubic")
            if sym_gcd(f, f.diff(_X)).degree() > 0:
                raise ValueError("elliptic requires three distinct roots")
        elif fam is Family.HYPERELLIPTIC:
            if _count_simple_roots(self._require_coeffs()) < 3:
                raise ValueError("hyperelliptic requires at least three simple roots")
        elif fam is Family.SUPERELLIPTIC:
            if self.m is None or self.m < 3:
                raise ValueError("superelliptic requires m >= 3")
            factors = _poly(self._require_coeffs()).factor_list()[1]
            good = sum(
                f.degree() for f, mult in factors if math.gcd(mult, self.m) == 1
            )
            if good < 2:
                raise ValueError(
                    "superelliptic requires >= 2 distinct roots with multiplicity prime to m"
                )
        elif fam is Family.THUE_CLASSIC:
            if not self.roots or len(set(self.roots)) < 3:
                raise ValueError("Thue requires at least three distinct roots")
            if not self.k:
                raise ValueError("Thue requires k != 0")
        elif fam is Family.SIEGEL_UNITS:
            if not self.a1 or not self.a2:
                raise ValueError("Siegel requires a1 * a2 != 0")
            if self.s is None:
                raise ValueError("Siegel requires an SContext")

    def _require_coeffs(self) -> tuple[Fraction, ...]:
        if not self.coeffs:
            raise ValueError("coefficient vector required")
        return self.coeffs

    def _coeffs_poly(self) -> Poly:
        return _poly(self._require_coeffs())


def mordell(k) -> CurveSpec:
    return CurveSpec(Family.MORDELL, k=Fraction(k))


def elliptic(coeffs) -> CurveSpec:
    return CurveSpec(Family.ELLIPTIC, coeffs=tuple(Fraction(c) for c in coeffs))


def hyperelliptic(coeffs) -> CurveSpec:
    return CurveSpec(Family.HYPERELLIPTIC, coeffs=tuple(Fraction(c) for c in coeffs))


def superelliptic(coeffs, m: int) -> CurveSpec:
    return CurveSpec(
        Family.SUPERELLIPTIC, coeffs=tuple(Fraction(c) for c in coeffs), m=m
    )


def thue_classic(roots, k) -> CurveSpec:
    return CurveSpec(
        Family.THUE_CLASSIC,
        roots=tuple(Fraction(r) for r in roots),
        k=Fraction(k),
    )


def siegel_units(a1, a2, s: SContext) -> CurveSpec:
    return CurveSpec(
        Family.SIEGEL_UNITS, a1=Fraction(a1), a2=Fraction(a2), s=s
    )


def _eval_rational_poly(coeffs: Sequence[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _exact_square(v: Fraction) -> int | None:
    if v.denominator != 1 or v < 0:
        return None
    r = math.isqrt(v.numerator)
    return r if r * r == v.numerator else None


def _exact_mth_power(v: Fraction, m: int) -> int | None:
    if v.denominator != 1:
        return None
    n = v.numerator
    if n >= 0:
        r, exact = integer_nthroot(n, m)
        return int(r) if exact else None
    if m % 2 == 0:
        return None
    r, exact = integer_nthroot(-n, m)
    return -int(r) if exact else None


def enumerate_points(
    spec: CurveSpec, box: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> tuple[tuple, ...]:
    """Exhaustive exact scan of the family's box, deterministically sorted.

    Curve families scan |x| <= box and test the matching y exactly;
    Thue scans |x|, |y| <= box; the Siegel unit equation scans S-unit
    exponent vectors in the +-box and solves for the second unit.
    """
    if box < 1:
        raise ValueError("box must be >= 1")
    fam = spec.family
    out: list[tuple] = []

    if fam in (Family.MORDELL, Family.ELLIPTIC, Family.HYPERELLIPTIC):
        if 2 * box + 1 > cap:
            raise EnumerationCapExceeded("enumeration cap exceeded")
        for x in range(-box, box + 1):
            if fam is Family.MORDELL:
                rhs = Fraction(x**3) + spec.k
            else:
                rhs = _eval_rational_poly(spec.coeffs, x)
            y = _exact_square(rhs)
            if y is None:
                continue
            out.append((x, y))
            if y != 0:
                out.append((x, -y))
    elif fam is Family.SUPERELLIPTIC:
        if 2 * box + 1 > cap:
            raise EnumerationCapExceeded("enumeration cap exceeded")
        for x in range(-box, box + 1):
            y = _exact_mth_power(_eval_rational_poly(spec.coeffs, x), spec.m)
            if y is not None:
                out.append((x, y))
    elif fam is Family.THUE_CLASSIC:
        if (2 * box + 1) ** 2 > cap:
            raise EnumerationCapExceeded("enumeration cap exceeded")
        for x in range(-box, box + 1):
            for y in range(-box, box + 1):
                value = Fraction(1)
                for r in spec.roots:
                    value *= x - r * y
                if value == spec.k:
                    out.append((x, y))
    elif fam is Family.SIEGEL_UNITS:
        s = spec.s
        total = 2 * (2 * box + 1) ** len(s.primes)
        if total > cap:
            raise EnumerationCapExceeded("enumeration cap exceeded")
        exp_range = range(-box, box + 1)
        for sign in (-1, 1):
            for exps in itertools.product(exp_range, repeat=len(s.primes)):
                e1 = Fraction(sign)
                for p, e in zip(s.primes, exps):
                    e1 *= Fraction(p) ** e
                e2 = (1 - spec.a1 * e1) / spec.a2
                if e2 == 0 or not is_s_unit(e2, s):
                    continue
                if max(
                    (abs(v) for v in _exponents(e2, s)), default=0
                ) > box:
                    continue
                out.append((e1, e2))
    else:
        raise ValueError(f"unknown family {fam}")

    return tuple(sorted(out))


def _exponents(v: Fraction, s: SContext) -> list[int]:
    from .sarith import valuation

    return [valuation(v, p) for p in s.primes]
