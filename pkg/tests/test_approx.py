import math
from fractions import Fraction

import mpmath
import pytest

from sunitkit.approx import (
    LOW_DEGREE_NOTE,
    forward_bound,
    homogeneous_eval,
    isolate_roots,
    kappa_backward,
    solve_thue_integer,
    verify_inequality,
)
from sunitkit.intervals import ComplexIv, Iv, poly_eval_iv

CUBE = (1, 0, 0, -2)  # X^3 - 2


def mp_fraction(make_value, digits=50) -> Fraction:
    """High-precision decimal oracle value as an exact rational.

    make_value is evaluated inside a working precision well above the digits
    requested, so every printed digit is trustworthy.
    """
    with mpmath.workdps(digits + 25):
        return Fraction(mpmath.nstr(make_value(), digits, strip_zeros=False))


# ---------------------------------------------------------------------------
# interval arithmetic


def test_interval_ring_ops_exact():
    a = Iv(Fraction(1, 3), Fraction(1, 2))
    b = Iv(Fraction(-2), Fraction(5))
    assert (a + b).lo == Fraction(1, 3) - 2
    assert (a * b).lo == Fraction(1, 2) * -2
    assert abs(Iv(Fraction(-3), Fraction(1))).hi == 3
    assert Iv(Fraction(-2), Fraction(3)).square().lo == 0
    with pytest.raises(ZeroDivisionError):
        a / Iv(Fraction(-1), Fraction(1))


def test_interval_sqrt_outward():
    two = Iv.point(2)
    r = two.sqrt(64)
    assert r.lo * r.lo <= 2 <= r.hi * r.hi
    assert r.width <= Fraction(1, 2**62)
    nine = Iv.point(9)
    r = nine.sqrt(16)
    assert r.contains(3)


def test_complex_interval_abs():
    z = ComplexIv.point(3, 4)
    a = z.abs(32)
    assert a.contains(5)
    assert a.width <= Fraction(1, 2**30)


def test_poly_eval_interval_contains_exact_value():
    coeffs = (1, 0, 0, -2)
    x = Iv(Fraction(5, 4), Fraction(5, 4))
    v = poly_eval_iv(coeffs, x)
    assert v.lo == v.hi == Fraction(5, 4) ** 3 - 2


# ---------------------------------------------------------------------------
# root isolation


def test_isolate_cube_root():
    rs = isolate_roots(CUBE, 64)
    assert rs.degree == 3 and rs.irreducible
    assert rs.real_root_indices == (2,)
    enclosure = rs.real_root(2)
    oracle = mp_fraction(mpmath.cbrt(2))
    assert enclosure.lo <= oracle <= enclosure.hi
    assert enclosure.width <= Fraction(1, 2**64)
    # conjugate pair sorted before the real root (smaller real part)
    assert rs.roots[0].im.hi < 0 < rs.roots[1].im.lo


def test_isolate_rational_roots_exact():
    rs = isolate_roots((1, 0, -1), 32)
    assert not rs.irreducible
    assert [r.re.lo for r in rs.roots] == [-1, 1]
    assert all(r.re.lo == r.re.hi for r in rs.roots)


def test_isolate_pure_imaginary():
    rs = isolate_roots((1, 0, 1), 32)
    assert rs.real_root_indices == ()
    lo = mp_fraction(mpmath.mpf(1))
    for root in rs.roots:
        assert not root.im.contains_zero()
    assert rs.roots[0].im.hi < 0 < rs.roots[1].im.lo
    assert rs.roots[0].im.lo <= -1 <= rs.roots[0].im.hi


def test_isolate_rejects_non_squarefree():
    with pytest.raises(ValueError, match="squarefree"):
        isolate_roots((1, -2, 1), 32)


def test_isolate_rejects_low_degree():
    with pytest.raises(ValueError, match="degree >= 2"):
        isolate_roots((2, -3), 32)


def test_enclosures_shrink_with_precision():
    widths = []
    for prec in (32, 64, 128):
        rs = isolate_roots(CUBE, prec)
        widths.append([r.re.width + r.im.width for r in rs.roots])
    for lo_prec, hi_prec in zip(widths, widths[1:]):
        for w_lo, w_hi in zip(lo_prec, hi_prec):
            assert w_hi <= w_lo


# ---------------------------------------------------------------------------
# kappa and the inequality


def test_kappa_cube_root_matches_oracle():
    (res,) = kappa_backward(CUBE, 1, 64)
    oracle = mp_fraction(4 / (3 * mpmath.cbrt(2) ** 2))
    assert res.kappa.lo <= oracle <= res.kappa.hi
    assert Fraction(8398, 10**4) <= res.kappa.lo
    assert res.kappa.hi <= Fraction(8400, 10**4)


def test_kappa_scales_exactly_with_k():
    (one,) = kappa_backward(CUBE, 1, 64)
    (two,) = kappa_backward(CUBE, 2, 64)
    assert two.kappa.lo == 2 * one.kappa.lo
    assert two.kappa.hi == 2 * one.kappa.hi


def test_kappa_sqrt2():
    results = kappa_backward((1, 0, -2), 1, 64)
    assert len(results) == 2
    oracle = mp_fraction(1 / mpmath.sqrt(2))
    for res in results:
        assert res.kappa.lo <= oracle <= res.kappa.hi
        assert res.low_degree_note == LOW_DEGREE_NOTE


def test_kappa_width_shrinks_with_precision():
    widths = [
        kappa_backward(CUBE, 1, prec)[0].kappa.width for prec in (32, 64, 128)
    ]
    assert widths[2] <= widths[1] <= widths[0]


def test_verify_inequality_cube_solution():
    report = verify_inequality(CUBE, 1, (-1, -1), 64)
    assert report.holds is True and report.decisive
    assert report.meets_threshold is True
    assert report.root_index == 2
    oracle = mp_fraction(mpmath.cbrt(2) - 1)
    assert report.distance.lo <= oracle <= report.distance.hi
    assert report.low_degree_note is None
    assert not report.tie_broken


def test_verify_inequality_rejects_y_zero():
    with pytest.raises(ValueError, match="y must be nonzero"):
        verify_inequality(CUBE, 1, (1, 0), 64)


def test_verify_inequality_rejects_non_solution():
    with pytest.raises(ValueError, match="does not satisfy"):
        verify_inequality(CUBE, 1, (2, 1), 64)


def test_verify_inequality_sqrt2():
    report = verify_inequality((1, 0, -2), -1, (1, 1), 64)
    assert report.holds is True and report.decisive
    assert report.low_degree_note == LOW_DEGREE_NOTE


def test_verify_inequality_tie_between_mirror_roots():
    # x/y = 0 is equidistant from the two roots of X^2 - 2; the tie is
    # detected exactly and the distance equals the bound, which intervals
    # can never separate, so the honest outcome is "undecided"
    report = verify_inequality((1, 0, -2), -2, (0, 1), 32)
    assert report.tie_broken
    assert report.holds is None and not report.decisive


def test_verify_inequality_linear_family():
    # f = 3X + 7: x = 7n + 1, y = -3n all satisfy F(x, y) = 3, with the
    # approximation inequality holding with exact rational equality
    for n in (1, 2, 5, 17):
        x, y = 7 * n + 1, -3 * n
        assert homogeneous_eval((3, 7), x, y) == 3
        report = verify_inequality((3, 7), 3, (x, y), 32)
        assert report.holds is True and report.decisive
        assert report.low_degree_note == LOW_DEGREE_NOTE
        assert report.distance.lo == report.bound.lo == Fraction(1, 3 * n)


# ---------------------------------------------------------------------------
# forward direction


def test_forward_bound_examples():
    fb = forward_bound(CUBE, Fraction(21, 25), Fraction(5, 4), 64)
    assert fb.value == 3
    assert fb.within is True and fb.decisive
    fb = forward_bound(CUBE, Fraction(21, 25), Fraction(1), 64)
    assert fb.value == 1 and fb.within is True
    fb = forward_bound((1, 0, -2), Fraction(1), Fraction(3, 2), 64)
    assert fb.value == 1


def test_forward_bound_precondition():
    with pytest.raises(ValueError, match="q\\*\\*d >= kappa"):
        forward_bound(CUBE, Fraction(3), Fraction(1), 64)


def cf_convergents_of_real_root(coeffs, index, count, bits=320):
    """Exact continued-fraction convergents of an isolated real root.

    Terms are read off a tight enclosure by interval arithmetic; each floor
    is certain because the enclosure never straddles an integer once it is
    narrow enough for the terms requested.
    """
    rs = isolate_roots(coeffs, bits)
    x = rs.real_root(index)
    terms = []
    for _ in range(count):
        lo_floor = x.lo.numerator // x.lo.denominator
        hi_floor = x.hi.numerator // x.hi.denominator
        assert lo_floor == hi_floor, "enclosure too wide for this many terms"
        terms.append(lo_floor)
        frac = x - lo_floor
        assert frac.lo > 0
        x = 1 / frac
    convergents = []
    p0, q0, p1, q1 = 1, 0, terms[0], 1
    convergents.append(Fraction(p1, q1))
    for a in terms[1:]:
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        convergents.append(Fraction(p1, q1))
    return convergents


def test_forward_bound_on_good_convergents():
    kappa = Fraction(21, 25)
    rs = isolate_roots(CUBE, 320)
    alpha = rs.real_root(2)
    qualified = 0
    for pq in cf_convergents_of_real_root(CUBE, 2, 12):
        distance = abs(alpha - pq)
        threshold = kappa / pq.denominator**3
        if distance.hi <= threshold:
            qualified += 1
            fb = forward_bound(CUBE, kappa, pq, 64)
            assert fb.within is True and fb.decisive
        else:
            assert distance.lo > threshold, "undecided convergent distance"
    assert qualified >= 2  # 1/1 and 5/4 qualify


# ---------------------------------------------------------------------------
# integer Thue scan


def test_solve_thue_integer_cube():
    assert solve_thue_integer(CUBE, 1, 100) == ((-1, -1), (1, 0))


def test_solve_thue_integer_matches_direct_eval():
    sols = solve_thue_integer((1, -1, 0, 1), 3, 12)
    for x, y in sols:
        assert x**3 - x**2 * y + y**3 == 3
    brute = {
        (x, y)
        for x in range(-12, 13)
        for y in range(-12, 13)
        if x**3 - x**2 * y + y**3 == 3
    }
    assert set(sols) == brute
