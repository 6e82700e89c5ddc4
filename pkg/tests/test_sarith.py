import random
from fractions import Fraction

import pytest
from sympy import factorint

from sunitkit.errors import EnumerationCapExceeded
from sunitkit.sarith import (
    SContext,
    SMembership,
    SUnit,
    enumerate_s_units,
    extend_s,
    is_s_unit,
    rational_from_str,
    rational_to_str,
    s_membership,
    valuation,
)


def oracle_valuation(x: Fraction, p: int) -> int:
    """Independent: full factorization of numerator and denominator."""
    num = factorint(abs(x.numerator))
    den = factorint(x.denominator)
    return num.get(p, 0) - den.get(p, 0)


def test_valuation_examples():
    assert valuation(12, 2) == 2
    assert valuation(Fraction(3, 8), 2) == -3
    assert valuation(1, 7) == 0


def test_valuation_zero_rejected():
    with pytest.raises(ValueError, match="valuation of zero"):
        valuation(0, 2)


def test_valuation_matches_factorization_oracle():
    rng = random.Random(101)
    for _ in range(300):
        x = Fraction(rng.randint(-500, 500) or 1, rng.randint(1, 500))
        for p in (2, 3, 5, 7):
            assert valuation(x, p) == oracle_valuation(x, p)


def test_valuation_additive():
    rng = random.Random(102)
    for _ in range(200):
        x = Fraction(rng.randint(-300, 300) or 1, rng.randint(1, 300))
        y = Fraction(rng.randint(-300, 300) or 1, rng.randint(1, 300))
        for p in (2, 3, 5):
            assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)


def test_scontext_validation():
    with pytest.raises(ValueError):
        SContext.of(4)
    with pytest.raises(ValueError):
        SContext((3, 2))
    assert SContext.of(3, 2).primes == (2, 3)


def test_membership_examples():
    s = SContext.of(2, 3)
    assert s_membership(Fraction(9, 8), s) is SMembership.S_UNIT
    assert s_membership(Fraction(5, 2), s) is SMembership.S_INTEGER
    assert s_membership(Fraction(1, 5), s) is SMembership.NOT_S_INTEGER
    assert s_membership(0, s) is SMembership.S_INTEGER


def test_membership_unit_symmetry():
    s = SContext.of(2, 5)
    rng = random.Random(103)
    for _ in range(300):
        x = Fraction(rng.randint(-200, 200) or 1, rng.randint(1, 200))
        unit = s_membership(x, s) is SMembership.S_UNIT
        both_integral = (
            s_membership(x, s) is not SMembership.NOT_S_INTEGER
            and s_membership(1 / x, s) is not SMembership.NOT_S_INTEGER
        )
        assert unit == both_integral


def test_enumerate_examples():
    got = enumerate_s_units(SContext.of(2), 1)
    assert set(got) == {
        Fraction(-2), Fraction(-1), Fraction(-1, 2),
        Fraction(1, 2), Fraction(1), Fraction(2),
    }
    # deterministic order: sign -1 before +1, exponents from -bound upward
    assert got == [
        Fraction(-1, 2), Fraction(-1), Fraction(-2),
        Fraction(1, 2), Fraction(1), Fraction(2),
    ]
    assert enumerate_s_units(SContext.of(), 5) == [Fraction(-1), Fraction(1)]
    # 2 signs x 3 exponents x 3 exponents
    assert len(enumerate_s_units(SContext.of(2, 3), 1)) == 18


def test_enumerate_monotone_and_units():
    s = SContext.of(2, 3)
    small = set(enumerate_s_units(s, 2))
    large = set(enumerate_s_units(s, 3))
    assert small <= large
    assert all(is_s_unit(v, s) for v in large)
    assert len(large) == len(enumerate_s_units(s, 3))  # no duplicates


def test_enumerate_cap():
    with pytest.raises(EnumerationCapExceeded, match="cap exceeded"):
        enumerate_s_units(SContext.of(2, 3, 5), 100, cap=1000)


def test_extend_s():
    assert extend_s(SContext.of(2), [Fraction(3, 5)]).primes == (2, 3, 5)
    assert extend_s(SContext.of(2, 3), [6, Fraction(-1, 2)]).primes == (2, 3)
    # gamma * (gamma - 1) with gamma = 3
    assert extend_s(SContext.of(), [3 * 2]).primes == (2, 3)
    with pytest.raises(ValueError):
        extend_s(SContext.of(2), [0])


def test_extend_s_idempotent():
    rng = random.Random(104)
    for _ in range(50):
        vals = [
            Fraction(rng.randint(1, 400), rng.randint(1, 400))
            for _ in range(3)
        ]
        s = SContext.of(2)
        once = extend_s(s, vals)
        assert extend_s(once, vals) == once


def test_sunit_representation_round_trip():
    s = SContext.of(2, 3)
    for v in enumerate_s_units(s, 3):
        u = SUnit.from_rational(v, s)
        assert u.value() == v
    with pytest.raises(ValueError):
        SUnit.from_rational(Fraction(5), s)


def test_rational_strings():
    assert rational_to_str(Fraction(-5, 8)) == "-5/8"
    assert rational_to_str(Fraction(3)) == "3"
    assert rational_from_str("-5/8") == Fraction(-5, 8)
    assert rational_from_str("3") == Fraction(3)
