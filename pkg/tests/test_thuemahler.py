import math
import random
from fractions import Fraction

import pytest
from sympy import factorint

from sunitkit.errors import InternalConsistencyError
from sunitkit.projective import normalize
from sunitkit.sarith import SContext
from sunitkit.thuemahler import (
    THREE_POINTS,
    BinaryFormSpec,
    XYForm,
    classes_equivalent,
    eval_form,
    instance_extension,
    make_solution,
    point_to_unit_pair,
    shear_transform,
    siegel_residue,
    solve_thue_mahler,
    transport_solutions,
    transport_thue_to_unit,
    transport_unit_to_thue,
    unit_pair_to_point,
    unit_point_dictionary,
)

S23 = SContext.of(2, 3)
SPLIT = BinaryFormSpec.of((0, 1, -1))


def oracle_is_unit(value: Fraction, primes) -> bool:
    """Independent S-unit test via full factorization."""
    if value == 0:
        return False
    for n in (abs(value.numerator), value.denominator):
        for p in factorint(n):
            if p not in primes:
                return False
    return True


def oracle_tm_points(form, primes, height):
    """Brute-force scan over coprime pairs with a factorization unit check."""
    pts = set()
    for x in range(0, height + 1):
        for y in range(-height, height + 1):
            if (x, y) == (0, 0) or math.gcd(x, abs(y)) != 1:
                continue
            if x == 0 and y != 1:
                continue
            value = form.evaluate(x, y)
            if value != 0 and oracle_is_unit(value / form.k, primes):
                pts.add((x, y))
    return pts


def test_form_validation():
    with pytest.raises(ValueError, match="distinct"):
        BinaryFormSpec.of((0, 0, 1))
    with pytest.raises(ValueError, match="nonzero"):
        BinaryFormSpec.of((0, 1, -1), (1,), 0)
    assert BinaryFormSpec.of((0, 1, -1), (2, 1)).degree == 4


def test_eval_form_examples():
    assert eval_form(SPLIT, 2, 1) == 6
    assert eval_form(XYForm(), 2, 1) == 2
    assert eval_form(SPLIT, 1, 0) == 1


def test_solver_xy_form_examples():
    pts = {t.point.coords for t in solve_thue_mahler(XYForm(), S23, 10)}
    for want in [(2, 1), (3, 1), (1, -1), (3, 2), (4, 1), (9, 8)]:
        assert want in pts


def test_solver_split_cubic_examples():
    sols = {t.point.coords: t.eps for t in solve_thue_mahler(SPLIT, S23, 5)}
    assert sols[(2, 1)] == 6
    assert sols[(1, 0)] == 1


def test_solver_with_k_five():
    form = BinaryFormSpec.of((0, 1, -1), (1,), 5)
    got = {t.point.coords for t in solve_thue_mahler(form, S23, 5)}
    assert got == oracle_tm_points(form, (2, 3), 5)
    # the oracle says this instance is nonempty at height 5
    assert (5, 4) in got


def test_solver_matches_bruteforce_oracle():
    for form in (XYForm(), SPLIT):
        got = {t.point.coords for t in solve_thue_mahler(form, S23, 12)}
        assert got == oracle_tm_points(form, (2, 3), 12)


def test_solutions_satisfy_equation_exactly():
    for t in solve_thue_mahler(SPLIT, S23, 30):
        assert SPLIT.evaluate(t.x, t.y) == SPLIT.k * t.eps
        assert t.point == normalize((t.x, t.y))


def test_classes_equivalent():
    s1 = make_solution(SPLIT, 2, 1, S23)
    s2 = make_solution(SPLIT, 4, 2)
    assert s2.eps == 48
    assert classes_equivalent(s1, s2, 3, S23) is True
    s3 = make_solution(SPLIT, 3, 1, S23)
    assert classes_equivalent(s1, s3, 3, S23) is False
    assert classes_equivalent(s1, s1, 3, S23) is True


def test_classes_equivalent_is_equivalence_relation():
    sols = solve_thue_mahler(SPLIT, S23, 20)
    rng = random.Random(21)
    sample = rng.sample(list(sols), min(8, len(sols)))
    for a in sample:
        assert classes_equivalent(a, a, 3, S23)
        for b in sample:
            assert classes_equivalent(a, b, 3, S23) == classes_equivalent(
                b, a, 3, S23
            )
            for c in sample:
                if classes_equivalent(a, b, 3, S23) and classes_equivalent(
                    b, c, 3, S23
                ):
                    assert classes_equivalent(a, c, 3, S23)


def test_classes_equivalent_detects_inconsistent_witness():
    s1 = make_solution(SPLIT, 2, 1, S23)
    bad = s1.__class__(Fraction(4), Fraction(2), Fraction(47), normalize((4, 2)))
    with pytest.raises(InternalConsistencyError):
        classes_equivalent(s1, bad, 3, S23)


def test_siegel_residue_examples():
    assert siegel_residue((0, 1, -1), 2, 1) == 0
    assert siegel_residue((Fraction(1, 2), 3, -5), 0, 0) == 0
    assert siegel_residue((Fraction(1, 2), 3, -5), 7, 2) == 0


def test_siegel_residue_random_exact_zero():
    rng = random.Random(22)
    for _ in range(1000):
        roots = set()
        while len(roots) < 3:
            roots.add(Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000)))
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        y = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        assert siegel_residue(tuple(roots), x, y) == 0


def test_transport_unit_to_thue_examples():
    got = transport_unit_to_thue(Fraction(1, 2), (0, 1, -1), 1, 2, SPLIT)
    assert (got.x, got.y, got.eps) == (2, 1, 6)
    got = transport_unit_to_thue(1, (0, 1, -1), 1, 1, SPLIT)
    assert (got.x, got.y, got.eps) == (1, 0, 1)
    # gamma = 3/2 rebuilds the (6, -3, 162) solution at scale eta = 6
    got = transport_unit_to_thue(Fraction(3, 2), (0, 1, -1), 1, 6, SPLIT)
    assert (got.x, got.y, got.eps) == (6, -3, 162)


def test_transport_degenerate_gamma():
    # gamma = 2 forces x = -y, where the third linear factor vanishes
    with pytest.raises(ValueError, match="root of F"):
        transport_unit_to_thue(2, (0, 1, -1), 1, 3, SPLIT)


def test_transport_thue_to_unit_examples():
    sol = make_solution(SPLIT, 2, 1, S23)
    assert transport_thue_to_unit(sol, SPLIT.roots, S23, SPLIT) == (
        2, 1, 3, Fraction(1, 2),
    )
    sol = make_solution(SPLIT, 1, 0, S23)
    assert transport_thue_to_unit(sol, SPLIT.roots) == (1, 1, 1, 1)
    sol = make_solution(SPLIT, 6, -3)
    assert transport_thue_to_unit(sol, SPLIT.roots) == (
        6, 9, 3, Fraction(3, 2),
    )


def test_transport_thue_to_unit_beta1_zero():
    # x = alpha_1 * y kills the first linear factor (and the whole form, so
    # such a record can only reach the transport if it was never a solution)
    from sunitkit.thuemahler import TMSolution

    bogus = TMSolution(Fraction(2), Fraction(1), Fraction(1), normalize((2, 1)))
    with pytest.raises(ValueError, match="alpha_1"):
        transport_thue_to_unit(bogus, (2, 1, -1))


def test_transport_round_trip_on_solver_output():
    for t in solve_thue_mahler(SPLIT, S23, 50):
        b1, b2, b3, gamma = transport_thue_to_unit(t, SPLIT.roots, S23, SPLIT)
        assert siegel_residue(SPLIT.roots, t.x, t.y) == 0
        back = transport_unit_to_thue(gamma, SPLIT.roots, SPLIT.k, b1, SPLIT)
        assert (back.x, back.y, back.eps) == (t.x, t.y, t.eps)


def test_shear_i_to_ii_pullback():
    sols = [make_solution(SPLIT, 2, 1, S23)]
    res = shear_transform(SPLIT, "i_to_ii", sols, S23)
    assert isinstance(res.form, XYForm)
    got = res.solutions[0]
    assert (got.x, got.y) == (Fraction(3, 2), Fraction(-1, 2))
    assert got.point == normalize((3, -1))
    assert got.x * got.y * (got.x - got.y) == got.eps
    assert res.s_delta == {2}


def test_shear_ii_to_i_formulas():
    # roots (0, 1, -1): x' = 2x, y' = x - y, determinant -2
    res = shear_transform(SPLIT, "ii_to_i", [make_solution(SPLIT, 2, 1, S23)], S23)
    assert res.matrix == ((2, 0), (1, -1))
    assert 2 in res.s_delta
    got = res.solutions[0]
    assert (got.x, got.y) == (4, 1)
    assert got.eps == 12


def test_shear_transports_all_solver_output():
    sols = solve_thue_mahler(SPLIT, S23, 30)
    res = shear_transform(SPLIT, "ii_to_i", sols, S23)
    assert len(res.solutions) == len(sols)
    for t in res.solutions:
        assert t.x * t.y * (t.x - t.y) == t.eps


def test_identity_transport_is_noop():
    sols = solve_thue_mahler(SPLIT, S23, 10)
    same = transport_solutions(sols, ((1, 0), (0, 1)), SPLIT, S23)
    assert [(t.x, t.y, t.eps) for t in same] == [(t.x, t.y, t.eps) for t in sols]


def test_shear_requires_appropriate_instance():
    other = BinaryFormSpec.of((0, 2, -1))
    with pytest.raises(ValueError, match="i_to_ii"):
        shear_transform(other, "i_to_ii", [], S23)
    with pytest.raises(ValueError, match="direction"):
        shear_transform(SPLIT, "sideways", [], S23)


def test_unit_point_dictionary_examples():
    assert unit_point_dictionary("unit_to_point", (4, -3), S23) == normalize((4, 1))
    assert unit_point_dictionary("point_to_unit", normalize((4, 1)), S23) == 4
    assert unit_point_dictionary(
        "unit_to_point", (Fraction(1, 2), Fraction(1, 2)), SContext.of(2)
    ) == normalize((1, 2))


def test_unit_point_round_trip():
    import itertools
    for e1 in [Fraction(4), Fraction(-3), Fraction(9, 8), Fraction(3, 4)]:
        e2 = 1 - e1
        p = unit_pair_to_point(e1, e2, S23)
        u = point_to_unit_pair(p, S23)
        assert unit_pair_to_point(u, 1 - u, S23) == p


def test_unit_point_preconditions():
    with pytest.raises(ValueError, match="sum to 1"):
        unit_pair_to_point(2, 3, S23)
    with pytest.raises(ValueError, match="S-unit"):
        unit_pair_to_point(6, -5, S23)
    with pytest.raises(ValueError):
        point_to_unit_pair(normalize((5, 1)), S23)


def test_instance_extension_collects_instance_primes():
    form = BinaryFormSpec.of((0, 1, -1), (Fraction(1, 7),), 5)
    s = instance_extension(form, SContext.of(2))
    assert 5 in s and 7 in s and 2 in s
