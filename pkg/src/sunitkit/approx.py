"""Effective bridge between Thue equations and rational approximation.

Root enclosures are validated rectangles with exact rational corners: real
roots carry an exact sign change (or are exact rational points), non-real
roots live in rectangles that exclude the real axis, and enclosures are
pairwise disjoint.  Every analytic comparison is done in outward-rounded
interval arithmetic and refined automatically until decisive, so a reported
"holds" is a proof at the working precision, never a float coincidence.

For squarefree integer f of degree d and the homogenization F:

* solutions of F(x,y) = k with y in the sufficiency regime approximate the
  nearest real root alpha with |alpha - x/y| <= kappa / |y|**d, where
  kappa = 2**(d-1) |k| / |f'(alpha)|;
* conversely a reduced p/q with |alpha - p/q| <= kappa / q**d forces
  0 < |F(p,q)| <= a0 * kappa * prod(|alpha - sigma| + 1) over the other
  roots sigma.

Degrees 1 and 2 are accepted but flagged: there the finiteness assertions
can genuinely fail, and reports carry a note instead of pretending.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import Poly, Rational, gcd as sym_gcd, symbols

from .intervals import ComplexIv, Iv, iv_min, poly_eval_iv

_X = symbols("x")

LOW_DEGREE_NOTE = (
    "degree <= 2: the finiteness assertions may fail at this degree; "
    "results describe only the tested instance"
)

_MAX_EXTRA_BITS = 256


@dataclass(frozen=True)
class RootSet:
    """Validated, pairwise disjoint enclosures of all complex roots."""

    polynomial: tuple[int, ...]
    irreducible: bool
    roots: tuple[ComplexIv, ...]
    precision: int

    @property
    def degree(self) -> int:
        return len(self.polynomial) - 1

    @property
    def real_root_indices(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.roots) if r.is_real())

    def real_root(self, index: int) -> Iv:
        root = self.roots[index]
        if not root.is_real():
            raise ValueError(f"root {index} is not real")
        return root.re


def _validate_coeffs(coeffs: Sequence[int]) -> tuple[int, ...]:
    cs = [int(c) for c in coeffs]
    if any(ci != c for ci, c in zip(cs, coeffs)):
        raise ValueError("coefficients must be integers")
    while cs and cs[0] == 0:
        cs.pop(0)
    if len(cs) < 2:
        raise ValueError("need degree >= 1")
    if cs[0] < 0:
        cs = [-c for c in cs]
    return tuple(cs)


def _poly_eval_exact(coeffs: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def homogeneous_eval(
    coeffs: Sequence[int], x: Fraction | int, y: Fraction | int
) -> Fraction:
    """F(x, y) = a0 x^d + a1 x^(d-1) y + ... + ad y^d, exactly."""
    x, y = Fraction(x), Fraction(y)
    acc = Fraction(0)
    for i, c in enumerate(coeffs):
        acc = acc * x + c * y**i
    return acc


def _sympy_rat_to_fraction(r) -> Fraction:
    return Fraction(int(r.p), int(r.q))


def isolate_roots(
    coeffs: Sequence[int], precision: int, max_extra_bits: int = _MAX_EXTRA_BITS
) -> RootSet:
    """Disjoint validated enclosures for every complex root of a squarefree f.

    Real enclosures are either exact rational points or intervals with an
    exact sign change at the endpoints; non-real enclosures are rectangles
    whose imaginary part excludes zero.  Widths are at most 2**-precision.
    Isolation is retried at increasing precision until these hold, then the
    roots are sorted by real part, then imaginary part.
    """
    cs = _validate_coeffs(coeffs)
    if len(cs) < 3:
        raise ValueError("need degree >= 2")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    poly = Poly(list(cs), _X)
    if sym_gcd(poly, poly.diff(_X)).degree() > 0:
        raise ValueError("polynomial is not squarefree")
    degree = len(cs) - 1
    width_cap = Fraction(1, 2**precision)

    extra = 0
    while True:
        eps = Rational(1, 2 ** (precision + 2 + extra))
        reals, comps = poly.intervals(all=True, eps=eps)
        enclosures: list[ComplexIv] = []
        ok = True
        for (a, b), _mult in reals:
            lo, hi = _sympy_rat_to_fraction(a), _sympy_rat_to_fraction(b)
            if hi - lo > width_cap:
                ok = False
                break
            if lo != hi:
                fa, fb = _poly_eval_exact(cs, lo), _poly_eval_exact(cs, hi)
                if fa == 0 or fb == 0 or (fa > 0) == (fb > 0):
                    ok = False
                    break
            enclosures.append(ComplexIv(Iv(lo, hi), Iv.point(0)))
        if ok:
            for (c1, c2), _mult in comps:
                re1, im1 = (_sympy_rat_to_fraction(t) for t in c1.as_real_imag())
                re2, im2 = (_sympy_rat_to_fraction(t) for t in c2.as_real_imag())
                re_iv, im_iv = Iv(re1, re2), Iv(im1, im2)
                if re_iv.width > width_cap or im_iv.width > width_cap:
                    ok = False
                    break
                if im_iv.contains_zero():
                    ok = False
                    break
                enclosures.append(ComplexIv(re_iv, im_iv))
        if ok and len(enclosures) == degree:
            enclosures.sort(key=lambda e: (e.re.mid, e.im.mid))
            return RootSet(cs, bool(poly.is_irreducible), tuple(enclosures), precision)
        extra += 32
        if extra > max_extra_bits:
            raise ValueError(
                "precision insufficient to separate and validate all roots"
            )


def _linear_rootset(coeffs: tuple[int, ...], precision: int) -> RootSet:
    a0, a1 = coeffs
    root = ComplexIv(Iv.point(Fraction(-a1, a0)), Iv.point(0))
    poly = Poly(list(coeffs), _X)
    return RootSet(coeffs, bool(poly.is_irreducible), (root,), precision)


def _rootset_any_degree(coeffs: Sequence[int], precision: int) -> RootSet:
    cs = _validate_coeffs(coeffs)
    if len(cs) == 2:
        return _linear_rootset(cs, precision)
    return isolate_roots(cs, precision)


def _derivative(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    d = len(coeffs) - 1
    return tuple(c * (d - i) for i, c in enumerate(coeffs[:-1]))


def _abs_f_prime(rs: RootSet, index: int, bits: int) -> Iv:
    deriv = _derivative(rs.polynomial)
    root = rs.roots[index]
    if root.is_real():
        return abs(poly_eval_iv(deriv, root.re))
    return poly_eval_iv(deriv, root).abs(bits)


def _min_conjugate_distance(rs: RootSet, index: int, bits: int) -> Iv:
    root = rs.roots[index]
    dists = [
        (root - other).abs(bits)
        for j, other in enumerate(rs.roots)
        if j != index
    ]
    return iv_min(*dists)


@dataclass(frozen=True)
class KappaResult:
    """kappa and the |y| sufficiency threshold for one real root."""

    root_index: int
    root: Iv
    kappa: Iv
    threshold_yd: Iv
    min_y: int
    low_degree_note: str | None

    def to_json(self) -> dict:
        return {
            "root_index": self.root_index,
            "root": _iv_json(self.root),
            "kappa": _iv_json(self.kappa),
            "threshold_y_pow_d": _iv_json(self.threshold_yd),
            "min_y": self.min_y,
            "note": self.low_degree_note,
        }


def kappa_backward(
    coeffs: Sequence[int], k: int, precision: int = 64
) -> tuple[KappaResult, ...]:
    """Per real root: kappa = 2**(d-1) |k| / |f'(alpha)| plus the |y| threshold.

    The threshold is the enclosure of 2**d |k| / (a0 * min_dist**d) bounding
    |y|**d from below in the sufficiency regime; min_y is the least integer
    |y| certainly meeting it.
    """
    if k == 0:
        raise ValueError("k must be nonzero")
    cs = _validate_coeffs(coeffs)
    d = len(cs) - 1
    note = LOW_DEGREE_NOTE if d <= 2 else None
    results = []
    for extra in range(0, _MAX_EXTRA_BITS + 1, 32):
        bits = precision + extra
        rs = _rootset_any_degree(cs, bits)
        results = []
        retry = False
        for index in rs.real_root_indices:
            fp = _abs_f_prime(rs, index, bits)
            if fp.contains_zero():
                retry = True
                break
            kappa = Fraction(2 ** (d - 1) * abs(k)) / fp
            if d == 1:
                threshold = Iv.point(0)
                min_y = 1
            else:
                mind = _min_conjugate_distance(rs, index, bits)
                if mind.contains_zero():
                    retry = True
                    break
                denom = Fraction(cs[0]) * _iv_pow(mind, d)
                threshold = Fraction(2**d * abs(k)) / denom
                min_y = _least_y_meeting(threshold, d)
            results.append(
                KappaResult(index, rs.real_root(index), kappa, threshold, min_y, note)
            )
        if not retry:
            return tuple(results)
    raise ValueError("could not stabilize kappa at the precision cap")


def _iv_pow(iv: Iv, n: int) -> Iv:
    acc = Iv.point(1)
    for _ in range(n):
        acc = acc * iv
    return acc


def _least_y_meeting(threshold: Iv, d: int) -> int:
    from sympy import integer_nthroot

    top = threshold.hi
    base = max(top.numerator // top.denominator, 0)
    y = max(int(integer_nthroot(base, d)[0]), 1)
    while Fraction(y) ** d < top:
        y += 1
    return y


@dataclass(frozen=True)
class ApproxReport:
    """Outcome of checking |alpha - x/y| <= kappa / |y|**d for one solution."""

    root_index: int
    distance: Iv
    kappa: Iv
    bound: Iv
    holds: bool | None
    decisive: bool
    meets_threshold: bool | None
    tie_broken: bool
    low_degree_note: str | None
    precision: int

    def to_json(self) -> dict:
        return {
            "root_index": self.root_index,
            "distance": _iv_json(self.distance),
            "kappa": _iv_json(self.kappa),
            "bound": _iv_json(self.bound),
            "holds": self.holds,
            "decisive": self.decisive,
            "meets_threshold": self.meets_threshold,
            "tie_broken": self.tie_broken,
            "note": self.low_degree_note,
            "precision": self.precision,
        }


def _iv_json(iv: Iv) -> dict:
    return {
        "lo": str(iv.lo),
        "hi": str(iv.hi),
        "lo_decimal": _decimal_str(iv.lo),
        "hi_decimal": _decimal_str(iv.hi),
    }


def _decimal_str(x: Fraction, digits: int = 24) -> str:
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = (x.numerator * 10**digits) // x.denominator
    text = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}".rstrip("0").rstrip(".") or "0"


def _mirror_tie(cs: tuple[int, ...], target: Fraction) -> bool:
    """Exact test whether f has two roots symmetric about the target."""
    mirrored = Poly(
        [Fraction(c) for c in cs], _X
    ).transform(Poly(2 * Rational(target.numerator, target.denominator) - _X, _X), Poly(1, _X))
    return sym_gcd(Poly(list(cs), _X), mirrored).degree() >= 1


def _nearest_real_root(
    cs: tuple[int, ...], target: Fraction, precision: int
) -> tuple[RootSet, int, Iv, bool]:
    """Index and distance of the real root closest to the target.

    Overlapping distance enclosures trigger refinement; a persisting overlap
    is resolved by the exact mirror-symmetry test, breaking a genuine tie in
    favor of the first root in the deterministic order.
    """
    for extra in range(0, _MAX_EXTRA_BITS + 1, 32):
        rs = _rootset_any_degree(cs, precision + extra)
        real_idx = rs.real_root_indices
        if not real_idx:
            raise ValueError("polynomial has no real roots")
        dists = {i: abs(rs.real_root(i) - target) for i in real_idx}
        best = min(real_idx, key=lambda i: (dists[i].hi, i))
        contenders = [
            i for i in real_idx if i != best and dists[i].lo <= dists[best].hi
        ]
        if not contenders:
            return rs, best, dists[best], False
        if _mirror_tie(cs, target):
            return rs, best, dists[best], True
    raise ValueError("could not decide the nearest real root at the precision cap")


def verify_inequality(
    coeffs: Sequence[int],
    k: int,
    solution: tuple[int, int],
    precision: int = 64,
) -> ApproxReport:
    """Check one solution of F(x,y) = k against the approximation inequality.

    Identifies the real root nearest to x/y, compares the exact distance
    enclosure with kappa/|y|**d, and reports whether |y| reaches the
    sufficiency threshold.  Indecision refines the working precision; the
    comparison is never settled by anything other than a separated interval.
    """
    x, y = solution
    if y == 0:
        raise ValueError("y must be nonzero")
    cs = _validate_coeffs(coeffs)
    d = len(cs) - 1
    if homogeneous_eval(cs, x, y) != k:
        raise ValueError("(x, y) does not satisfy F(x, y) = k")
    note = LOW_DEGREE_NOTE if d <= 2 else None
    target = Fraction(x, y)

    last: ApproxReport | None = None
    for extra in range(0, _MAX_EXTRA_BITS + 1, 32):
        bits = precision + extra
        rs, index, distance, tie = _nearest_real_root(cs, target, bits)
        fp = _abs_f_prime(rs, index, bits)
        if fp.contains_zero():
            continue
        kappa = Fraction(2 ** (d - 1) * abs(k)) / fp
        bound = kappa * Fraction(1, abs(y) ** d)
        if distance.surely_le(bound):
            holds: bool | None = True
        elif distance.surely_gt(bound):
            holds = False
        else:
            holds = None
        if d == 1:
            meets: bool | None = True
        else:
            meets = None
            mind = _min_conjugate_distance(rs, index, bits)
            if not mind.contains_zero():
                threshold = Fraction(2**d * abs(k)) / (
                    Fraction(cs[0]) * _iv_pow(mind, d)
                )
                yd = Fraction(abs(y)) ** d
                if yd >= threshold.hi:
                    meets = True
                elif yd <= threshold.lo:
                    meets = False
        last = ApproxReport(
            index, distance, kappa, bound, holds,
            holds is not None, meets, tie, note, bits,
        )
        if holds is not None and meets is not None:
            return last
    if last is None:
        raise ValueError("derivative enclosure never separated from zero")
    return last


@dataclass(frozen=True)
class ForwardBound:
    """Exact |F(p,q)| against the bound a0*kappa*prod(|alpha-sigma|+1)."""

    value: Fraction
    bound: Iv
    within: bool | None
    root_index: int
    decisive: bool
    tie_broken: bool

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "bound": _iv_json(self.bound),
            "within": self.within,
            "root_index": self.root_index,
            "decisive": self.decisive,
            "tie_broken": self.tie_broken,
        }


def forward_bound(
    coeffs: Sequence[int],
    kappa: Fraction,
    pq: Fraction,
    precision: int = 64,
) -> ForwardBound:
    """Bound |F(p,q)| for a good approximant p/q of the nearest root.

    Requires q**d >= kappa (the normalization under which the bound is
    derived).  The nearest root is taken over all roots; conjugate pairs are
    equidistant from a rational, so such ties are broken deterministically
    toward the earlier root, which does not change the bound.
    """
    cs = _validate_coeffs(coeffs)
    d = len(cs) - 1
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    pq = Fraction(pq)
    if Fraction(pq.denominator) ** d < kappa:
        raise ValueError("q**d >= kappa is required")
    value = abs(homogeneous_eval(cs, pq.numerator, pq.denominator))

    last: ForwardBound | None = None
    for extra in range(0, _MAX_EXTRA_BITS + 1, 32):
        bits = precision + extra
        rs = _rootset_any_degree(cs, bits)
        dists = [
            abs(root.re - pq) if root.is_real()
            else (root - ComplexIv.point(pq)).abs(bits)
            for root in rs.roots
        ]
        best = min(range(len(dists)), key=lambda i: (dists[i].hi, i))
        contenders = [
            i for i in range(len(dists))
            if i != best and dists[i].lo <= dists[best].hi
        ]
        tie = bool(contenders)
        if contenders and not all(
            _structural_tie(rs, best, i, pq) for i in contenders
        ):
            continue
        bound = Iv.point(Fraction(cs[0]) * kappa)
        for j, root in enumerate(rs.roots):
            if j == best:
                continue
            bound = bound * ((rs.roots[best] - root).abs(bits) + 1)
        if Fraction(value) <= bound.lo:
            return ForwardBound(value, bound, True, best, True, tie)
        if Fraction(value) > bound.hi:
            return ForwardBound(value, bound, False, best, True, tie)
        last = ForwardBound(value, bound, None, best, False, tie)
    if last is None:
        raise ValueError("could not settle the nearest root at the precision cap")
    return last


def _structural_tie(rs: RootSet, i: int, j: int, target: Fraction) -> bool:
    """Conjugate pairs and mirror-symmetric real pairs tie at a rational target."""
    a, b = rs.roots[i], rs.roots[j]
    conjugate = (
        a.re.intersects(b.re)
        and a.im.lo == -b.im.hi
        and a.im.hi == -b.im.lo
    )
    if conjugate:
        return True
    if a.is_real() and b.is_real():
        return _mirror_tie(rs.polynomial, target)
    return False


def solve_thue_integer(
    coeffs: Sequence[int], k: int, height: int
) -> tuple[tuple[int, int], ...]:
    """All integer pairs with F(x, y) = k and max(|x|, |y|) <= height."""
    cs = _validate_coeffs(coeffs)
    out = []
    for x in range(-height, height + 1):
        for y in range(-height, height + 1):
            acc = 0
            yp = 1
            for c in cs:
                acc = acc * x + c * yp
                yp *= y
            if acc == k:
                out.append((x, y))
    return tuple(sorted(out))
