"""Interval arithmetic with exact rational endpoints.

Ring operations on intervals are exact (Fraction endpoints, no rounding), so
an enclosure never silently loses containment; only square and n-th roots
round, and they round outward to a requested number of dyadic bits.  Complex
enclosures are axis-aligned rectangles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import integer_nthroot


def _sqrt_lo(x: Fraction, bits: int) -> Fraction:
    scale = 1 << (2 * bits)
    return Fraction(math.isqrt((x.numerator * scale) // x.denominator), 1 << bits)


def _sqrt_hi(x: Fraction, bits: int) -> Fraction:
    scale = 1 << (2 * bits)
    scaled = -((-x.numerator * scale) // x.denominator)  # ceil
    r = math.isqrt(scaled)
    if r * r < scaled:
        r += 1
    return Fraction(r, 1 << bits)


def _nth_root_lo(x: Fraction, n: int, bits: int) -> Fraction:
    scale = 1 << (n * bits)
    r, _ = integer_nthroot((x.numerator * scale) // x.denominator, n)
    return Fraction(int(r), 1 << bits)


def _nth_root_hi(x: Fraction, n: int, bits: int) -> Fraction:
    scale = 1 << (n * bits)
    scaled = -((-x.numerator * scale) // x.denominator)
    r, exact = integer_nthroot(scaled, n)
    if not exact:
        r += 1
    return Fraction(int(r), 1 << bits)


@dataclass(frozen=True)
class Iv:
    """Closed interval [lo, hi] with Fraction endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Fraction | int) -> "Iv":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def rad(self) -> Fraction:
        return self.width / 2

    def __add__(self, other) -> "Iv":
        other = _as_iv(other)
        return Iv(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "Iv":
        return Iv(-self.hi, -self.lo)

    def __sub__(self, other) -> "Iv":
        return self + (-_as_iv(other))

    def __rsub__(self, other) -> "Iv":
        return _as_iv(other) - self

    def __mul__(self, other) -> "Iv":
        other = _as_iv(other)
        products = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ]
        return Iv(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Iv":
        other = _as_iv(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("division by interval containing zero")
        return self * Iv(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other) -> "Iv":
        return _as_iv(other) / self

    def __abs__(self) -> "Iv":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Iv(Fraction(0), max(-self.lo, self.hi))

    def square(self) -> "Iv":
        a = abs(self)
        return Iv(a.lo * a.lo, a.hi * a.hi)

    def sqrt(self, bits: int) -> "Iv":
        if self.lo < 0:
            raise ValueError("sqrt of interval with negative part")
        return Iv(_sqrt_lo(self.lo, bits), _sqrt_hi(self.hi, bits))

    def nth_root(self, n: int, bits: int) -> "Iv":
        if self.lo < 0:
            raise ValueError("root of interval with negative part")
        return Iv(_nth_root_lo(self.lo, n, bits), _nth_root_hi(self.hi, n, bits))

    def contains(self, x: Fraction | int) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def surely_lt(self, other) -> bool:
        return self.hi < _as_iv(other).lo

    def surely_le(self, other) -> bool:
        return self.hi <= _as_iv(other).lo

    def surely_gt(self, other) -> bool:
        return self.lo > _as_iv(other).hi

    def intersects(self, other: "Iv") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _as_iv(x) -> Iv:
    if isinstance(x, Iv):
        return x
    return Iv.point(Fraction(x))


def iv_min(*ivs: Iv) -> Iv:
    return Iv(min(i.lo for i in ivs), min(i.hi for i in ivs))


def iv_max(*ivs: Iv) -> Iv:
    return Iv(max(i.lo for i in ivs), max(i.hi for i in ivs))


@dataclass(frozen=True)
class ComplexIv:
    """Axis-aligned rectangle enclosing a complex value."""

    re: Iv
    im: Iv

    @classmethod
    def point(cls, re: Fraction | int, im: Fraction | int = 0) -> "ComplexIv":
        return cls(Iv.point(re), Iv.point(im))

    def __add__(self, other) -> "ComplexIv":
        other = _as_civ(other)
        return ComplexIv(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "ComplexIv":
        return ComplexIv(-self.re, -self.im)

    def __sub__(self, other) -> "ComplexIv":
        return self + (-_as_civ(other))

    def __rsub__(self, other) -> "ComplexIv":
        return _as_civ(other) - self

    def __mul__(self, other) -> "ComplexIv":
        other = _as_civ(other)
        return ComplexIv(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def abs_sq(self) -> Iv:
        return self.re.square() + self.im.square()

    def abs(self, bits: int) -> Iv:
        return self.abs_sq().sqrt(bits)

    def is_real(self) -> bool:
        return self.im.lo == 0 and self.im.hi == 0

    def __str__(self) -> str:
        return f"({self.re} + {self.im} i)"


def _as_civ(x) -> ComplexIv:
    if isinstance(x, ComplexIv):
        return x
    if isinstance(x, Iv):
        return ComplexIv(x, Iv.point(0))
    return ComplexIv.point(Fraction(x))


def poly_eval_iv(coeffs, z):
    """Horner evaluation of sum(coeffs[i] * z**(d-i)) over intervals.

    coeffs are exact rationals ordered from the leading term down; z may be an
    Iv or a ComplexIv and the result has the matching type.
    """
    acc = _as_civ(0) if isinstance(z, ComplexIv) else _as_iv(0)
    for c in coeffs:
        acc = acc * z + Fraction(c)
    return acc
