import itertools
import random
from fractions import Fraction

import pytest

from sunitkit.errors import EnumerationCapExceeded, InternalConsistencyError
from sunitkit.sarith import SContext, is_s_unit
from sunitkit.unitsolve import (
    ClassRep,
    UnitTuple,
    binomial_expansion_terms,
    lift_binomial,
    lift_gamma,
    normalize_class,
    solve_unit_equation,
    unit_tuple,
    vanishing_subsums,
)


def oracle_unit_values(primes, bound):
    """Independent S-unit enumeration by direct product over exponents."""
    vals = []
    for sign in (1, -1):
        for exps in itertools.product(range(-bound, bound + 1), repeat=len(primes)):
            v = Fraction(sign)
            for p, e in zip(primes, exps):
                v *= Fraction(p) ** e
            vals.append(v)
    return vals


def oracle_three_term_classes(primes, bound):
    """Brute-force scan of (1, e1, e2) with 1 + e1 + e2 = 0, both entries
    from the raw unit list; independent of the solver's forced-last-entry
    search."""
    units = set(oracle_unit_values(primes, bound))
    found = set()
    for e1 in units:
        for e2 in units:
            if 1 + e1 + e2 == 0:
                found.add((Fraction(1), e1, e2))
    return found


def test_unit_tuple_validation():
    s = SContext.of(2, 3)
    unit_tuple((1, 8, -9), s)
    with pytest.raises(ValueError, match="sum to zero"):
        unit_tuple((1, 1, -3), s)
    with pytest.raises(ValueError, match="not an S-unit"):
        unit_tuple((1, 5, -6), s)


def test_class_normalization_soundness():
    s = SContext.of(2, 3)
    rng = random.Random(11)
    base = unit_tuple((1, 8, -9), s)
    for _ in range(100):
        eta = Fraction(2) ** rng.randint(-5, 5) * Fraction(3) ** rng.randint(-5, 5)
        eta *= rng.choice([1, -1])
        scaled = unit_tuple([eta * e for e in base.entries], s)
        assert normalize_class(scaled) == normalize_class(base)


def test_vanishing_subsums_examples():
    assert vanishing_subsums((1, -1, 2, -2)) == ((0, 1), (2, 3))
    assert vanishing_subsums((4, 6, -9, -1)) == ()
    assert vanishing_subsums((1, 1, -2)) == ()


def test_vanishing_subsums_min_size_one():
    # singleton zero entries only matter at min_size 1
    assert vanishing_subsums((0, 1, -1), min_size=1) == ((0,), (1, 2))
    assert vanishing_subsums((0, 1, -1), min_size=2) == ((1, 2),)


def test_solve_unit_equation_matches_bruteforce_oracle():
    s = SContext.of(2, 3)
    got = {c.entries for c in solve_unit_equation(1, s, 4)}
    assert got == oracle_three_term_classes((2, 3), 4)


def test_solve_unit_equation_examples():
    s = SContext.of(2, 3)
    entries = {c.entries for c in solve_unit_equation(1, s, 4)}
    for expected in [(1, 1, -2), (1, 2, -3), (1, 3, -4), (1, 8, -9), (1, -3, 2)]:
        assert tuple(Fraction(e) for e in expected) in entries
    assert solve_unit_equation(1, SContext.of(), 0) == ()


def test_solve_unit_equation_four_terms():
    s = SContext.of(2, 3)
    classes = solve_unit_equation(2, s, 3)
    target = normalize_class(unit_tuple((4, 6, -9, -1), s))
    assert target in classes


def test_solver_outputs_are_valid():
    s = SContext.of(2, 3)
    for c in solve_unit_equation(2, s, 2):
        assert c.entries[0] == 1
        assert sum(c.entries) == 0
        assert all(is_s_unit(e, s) for e in c.entries)
        assert vanishing_subsums(c.entries) == ()


def test_solver_monotone_in_bound():
    s = SContext.of(2, 3)
    small = set(solve_unit_equation(1, s, 3))
    large = set(solve_unit_equation(1, s, 5))
    assert small <= large


def test_solver_cap_carries_partial():
    with pytest.raises(EnumerationCapExceeded) as exc:
        solve_unit_equation(2, SContext.of(2, 3), 3, cap=100)
    assert exc.value.partial is not None


def test_lift_gamma_examples():
    s2 = SContext.of(2)
    empty = SContext.of()
    got = lift_gamma(unit_tuple((1, -1), empty), 3, 1, s2)
    assert got.entries == (3, -2, -1)
    assert got.context.primes == (2, 3)
    got = lift_gamma(unit_tuple((1, 1, -2), s2), 5, 1, s2)
    assert got.entries == (5, 5, -8, -2)
    assert got.context.primes == (2, 5)
    got = lift_gamma(unit_tuple((1, -1), empty), 5, 2, s2)
    assert got.entries == (5, -3, -1, -1)
    assert got.context.primes == (2, 3, 5)


def test_lift_gamma_preconditions():
    s2 = SContext.of(2)
    base = unit_tuple((1, -1), SContext.of())
    with pytest.raises(ValueError, match="invalid gamma"):
        lift_gamma(base, 2, 1, s2)  # gamma is an S-unit
    with pytest.raises(ValueError, match="invalid gamma"):
        lift_gamma(base, Fraction(1, 3), 1, s2)  # not an S-integer
    with pytest.raises(ValueError, match="invalid gamma"):
        lift_gamma(base, 3, 3, s2)  # r = 3 has 3/gamma = 1 in O_S
    with pytest.raises(ValueError, match="degenerate"):
        lift_gamma(unit_tuple((1, -1, 2, -2), s2), 3, 1, s2)


def test_lift_gamma_output_always_valid():
    s2 = SContext.of(2)
    for c in solve_unit_equation(1, s2, 6):
        lifted = lift_gamma(c, 3, 1, s2)
        assert sum(lifted.entries) == 0
        assert all(is_s_unit(e, lifted.context) for e in lifted.entries)
        assert vanishing_subsums(lifted.entries) == ()


def test_binomial_identity_symbolic():
    rng = random.Random(12)
    for _ in range(1000):
        eps = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        m = rng.randint(1, 6)
        assert sum(binomial_expansion_terms(eps, m)) == 0


def test_binomial_identity_all_small_degrees():
    rng = random.Random(13)
    for m in range(1, 9):
        for _ in range(100):
            eps = Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000))
            assert sum(binomial_expansion_terms(eps, m)) == 0


def test_lift_binomial_examples():
    t, degenerate = lift_binomial(3, 2, SContext.of(2, 3))
    assert t.entries == (4, 6, -9, -1)
    assert degenerate is False
    t, degenerate = lift_binomial(2, 2, SContext.of(2))
    assert t.entries == (1, 4, -4, -1)
    assert degenerate is True
    t, degenerate = lift_binomial(-1, 1, SContext.of(2))
    assert t.entries == (2, -1, -1)
    assert degenerate is False


def test_lift_binomial_preconditions():
    with pytest.raises(ValueError, match="S-unit"):
        lift_binomial(5, 2, SContext.of(2, 3))
    with pytest.raises(ValueError, match="1 - eps"):
        lift_binomial(3, 2, SContext.of(3))


def test_lift_binomial_nondegenerate_accepted_by_solver_predicate():
    s = SContext.of(2, 3)
    t, degenerate = lift_binomial(3, 2, s)
    assert not degenerate
    assert sum(t.entries) == 0
    assert all(is_s_unit(e, t.context) for e in t.entries)
    assert vanishing_subsums(t.entries) == ()


def test_class_rep_requires_leading_one():
    s = SContext.of(2)
    with pytest.raises(ValueError, match="start with 1"):
        ClassRep(UnitTuple((Fraction(2), Fraction(-2)), s))
