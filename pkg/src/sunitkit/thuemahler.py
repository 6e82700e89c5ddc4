"""Thue-Mahler instances F(X,Y) = k*E over Q with a split cubic part.

A form is either a ``BinaryFormSpec`` (three distinct rational roots times a
rational cofactor) or the pivotal ``XYForm`` for X*Y*(X-Y), whose third root
sits at infinity and which is therefore represented by a dedicated evaluator.
Solutions are classed by their projective point (x:y); all the constructive
transports between Thue-Mahler solutions, two-term unit-equation solutions
and S-integral points of the thrice-punctured line live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import linalg
from .errors import EnumerationCapExceeded, InternalConsistencyError
from .projective import Hyperplane, ProjPoint, is_s_integral, normalize
from .sarith import (
    DEFAULT_ENUMERATION_CAP,
    SContext,
    extend_s,
    is_s_integer,
    is_s_unit,
    primes_of,
)

Roots = tuple[Fraction, Fraction, Fraction]

# removed divisor of the thrice-punctured line: 0=(0:1), 1=(1:1), infinity=(1:0)
THREE_POINTS = (Hyperplane.of(1, 0), Hyperplane.of(0, 1), Hyperplane.of(1, -1))


@dataclass(frozen=True)
class BinaryFormSpec:
    """(X - a1 Y)(X - a2 Y)(X - a3 Y) * H(X,Y), solved against k * E."""

    roots: Roots
    cofactor: tuple[Fraction, ...] = (Fraction(1),)
    k: Fraction = Fraction(1)

    def __post_init__(self):
        if len(self.roots) != 3 or len(set(self.roots)) != 3:
            raise ValueError("roots must be three distinct rationals")
        if self.k == 0:
            raise ValueError("k must be nonzero")
        if not self.cofactor or all(c == 0 for c in self.cofactor):
            raise ValueError("cofactor must be a nonzero coefficient vector")

    @classmethod
    def of(cls, roots, cofactor=(1,), k=1) -> "BinaryFormSpec":
        return cls(
            tuple(Fraction(r) for r in roots),
            tuple(Fraction(c) for c in cofactor),
            Fraction(k),
        )

    @property
    def degree(self) -> int:
        return 3 + len(self.cofactor) - 1

    def cofactor_eval(self, x: Fraction, y: Fraction) -> Fraction:
        m = len(self.cofactor) - 1
        return sum(
            (c * x ** (m - i) * y**i for i, c in enumerate(self.cofactor)),
            Fraction(0),
        )

    def evaluate(self, x: Fraction | int, y: Fraction | int) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        v = self.cofactor_eval(x, y)
        for r in self.roots:
            v *= x - r * y
        return v

    def extension_values(self) -> list[Fraction]:
        """Nonzero quantities whose primes must join S for the transports."""
        a1, a2, a3 = self.roots
        d = Fraction(math.lcm(*(c.denominator for c in self.cofactor)))
        vals = [self.k, d, a2 - a3, a1 - a3, a2 - a1]
        vals += [r for r in self.roots if r != 0]
        vals += [d * c for c in self.cofactor if c != 0]
        return vals

    def describe(self) -> str:
        return (
            f"roots={','.join(str(r) for r in self.roots)}"
            f";H={','.join(str(c) for c in self.cofactor)};k={self.k}"
        )


@dataclass(frozen=True)
class XYForm:
    """The special form X*Y*(X-Y) = k*E (one root at infinity)."""

    k: Fraction = Fraction(1)

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("k must be nonzero")

    @property
    def degree(self) -> int:
        return 3

    def evaluate(self, x: Fraction | int, y: Fraction | int) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return x * y * (x - y)

    def extension_values(self) -> list[Fraction]:
        return [self.k]

    def describe(self) -> str:
        return "form=xy(x-y)" if self.k == 1 else f"form=xy(x-y);k={self.k}"


Form = Union[BinaryFormSpec, XYForm]


@dataclass(frozen=True)
class TMSolution:
    """One solution (x, y, eps) with F(x,y) = k*eps, classed by (x:y)."""

    x: Fraction
    y: Fraction
    eps: Fraction
    point: ProjPoint


def make_solution(
    form: Form, x: Fraction | int, y: Fraction | int, s: SContext | None = None
) -> TMSolution:
    x, y = Fraction(x), Fraction(y)
    value = form.evaluate(x, y)
    if value == 0:
        raise ValueError("(x, y) lies on the form's zero locus")
    eps = value / form.k
    if s is not None:
        if not (is_s_integer(x, s) and is_s_integer(y, s)):
            raise ValueError("x, y must be S-integers")
        if not is_s_unit(eps, s):
            raise ValueError(f"F(x,y)/k = {eps} is not an S-unit")
    return TMSolution(x, y, eps, normalize((x, y)))


def eval_form(form: Form, x: Fraction | int, y: Fraction | int) -> Fraction:
    return form.evaluate(x, y)


def solve_thue_mahler(
    form: Form,
    s: SContext,
    height: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> tuple[TMSolution, ...]:
    """Scan coprime integer pairs up to the height and keep S-unit values.

    Each canonical coprime pair (first nonzero coordinate positive) is its own
    projective class, so the output carries one solution per class, sorted by
    point coordinates.
    """
    if height < 1:
        raise ValueError("height must be >= 1")
    results: list[TMSolution] = []
    scanned = 0

    def consider(x: int, y: int):
        nonlocal scanned
        scanned += 1
        if scanned > cap:
            raise EnumerationCapExceeded(
                f"enumeration cap exceeded at height {height}",
                partial=tuple(results),
            )
        value = form.evaluate(x, y)
        if value == 0:
            return
        if is_s_unit(value / form.k, s):
            results.append(make_solution(form, x, y, s))

    consider(0, 1)
    for x in range(1, height + 1):
        for y in range(-height, height + 1):
            if math.gcd(x, y) == 1:
                consider(x, y)
    return tuple(sorted(results, key=lambda t: t.point.coords))


def classes_equivalent(
    sol1: TMSolution, sol2: TMSolution, m: int, s: SContext
) -> bool:
    """Same class iff same projective point; the scaling witness is re-checked.

    When the points agree, eta = x'/x (or y'/y) must be an S-unit with
    eps' = eta**m * eps; a failure would contradict the equation both
    solutions satisfy, so it raises instead of returning False.
    """
    if sol1.point != sol2.point:
        return False
    eta = sol2.x / sol1.x if sol1.x != 0 else sol2.y / sol1.y
    if not is_s_unit(eta, s) or sol2.eps != eta**m * sol1.eps:
        raise InternalConsistencyError(
            f"equivalent points with inconsistent witness eta={eta}"
        )
    return True


def siegel_residue(
    roots: Sequence[Fraction | int], x: Fraction | int, y: Fraction | int
) -> Fraction:
    """(a1-a2)*b3 + (a2-a3)*b1 + (a3-a1)*b2 for b_i = x - a_i y; identically zero."""
    a1, a2, a3 = (Fraction(r) for r in roots)
    if len({a1, a2, a3}) != 3:
        raise ValueError("roots must be distinct")
    x, y = Fraction(x), Fraction(y)
    b1, b2, b3 = x - a1 * y, x - a2 * y, x - a3 * y
    return (a1 - a2) * b3 + (a2 - a3) * b1 + (a3 - a1) * b2


def instance_extension(form: Form, s: SContext) -> SContext:
    """S extended by every prime the instance's transports can introduce."""
    return extend_s(s, form.extension_values())


def transport_thue_to_unit(
    sol: TMSolution,
    roots: Sequence[Fraction | int],
    s: SContext | None = None,
    form: BinaryFormSpec | None = None,
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Linear factors (b1, b2, b3) of a solution and the ratio gamma = b2/b1.

    The b's satisfy the three-term residue identity exactly.  When the
    instance's context is supplied, each (a_i - a_j)*b_k is checked to be a
    unit over the extended context.
    """
    a1, a2, a3 = (Fraction(r) for r in roots)
    b1 = sol.x - a1 * sol.y
    if b1 == 0:
        raise ValueError("x = alpha_1 * y: first linear factor vanishes")
    b2 = sol.x - a2 * sol.y
    b3 = sol.x - a3 * sol.y
    if siegel_residue(roots, sol.x, sol.y) != 0:
        raise InternalConsistencyError("three-term residue identity failed")
    if s is not None and form is not None:
        s_prime = instance_extension(form, s)
        for diff, b in (((a1 - a2), b3), ((a2 - a3), b1), ((a3 - a1), b2)):
            if not is_s_unit(diff * b, s_prime):
                raise InternalConsistencyError(
                    f"{diff} * {b} is not a unit over the extended context"
                )
    return b1, b2, b3, b2 / b1


def transport_unit_to_thue(
    gamma: Fraction | int,
    roots: Sequence[Fraction | int],
    k: Fraction | int,
    eta: Fraction | int,
    form: Form,
) -> TMSolution:
    """Rebuild a solution from a factor ratio gamma and a unit scale eta.

    x0 = (a1*gamma - a2)/(a1 - a2), y0 = (gamma - 1)/(a1 - a2) solve
    b2/b1 = gamma at unit scale; scaling by eta gives (x0*eta, y0*eta,
    eps0*eta**n) and the form equation is re-checked exactly.
    """
    a1, a2, _ = (Fraction(r) for r in roots)
    gamma, k, eta = Fraction(gamma), Fraction(k), Fraction(eta)
    x0 = (a1 * gamma - a2) / (a1 - a2)
    y0 = (gamma - 1) / (a1 - a2)
    base = form.evaluate(x0, y0)
    if base == 0:
        raise ValueError("gamma yields root of F")
    eps0 = base / k
    n = form.degree
    x, y, eps = x0 * eta, y0 * eta, eps0 * eta**n
    if form.evaluate(x, y) != k * eps:
        raise InternalConsistencyError("transported solution fails the form equation")
    return TMSolution(x, y, eps, normalize((x, y)))


@dataclass(frozen=True)
class ShearResult:
    form: Form
    matrix: linalg.Matrix
    solutions: tuple[TMSolution, ...]
    s_delta: frozenset[int]
    context: SContext


def _shear_matrix_i_to_ii() -> linalg.Matrix:
    # inverse of (x, y) -> (x - y, x + y)
    return linalg.inverse(linalg.as_matrix([[1, -1], [1, 1]]))


def _shear_matrix_ii_to_i(roots: Roots) -> linalg.Matrix:
    a1, a2, a3 = roots
    return linalg.as_matrix(
        [[a2 - a3, -a1 * (a2 - a3)], [a1 - a3, -a2 * (a1 - a3)]]
    )


def shear_transform(
    instance: BinaryFormSpec,
    direction: str,
    sols: Sequence[TMSolution],
    s: SContext,
) -> ShearResult:
    """Carry solutions of a split instance to the X*Y*(X-Y) instance.

    direction "i_to_ii": the instance must be the cubic with roots {0, 1, -1};
    its solutions pull back through the shear (x, y) -> (x - y, x + y).
    direction "ii_to_i": any split instance; its solutions push forward
    through x' = (a2-a3)(x - a1 y), y' = (a1-a3)(x - a2 y).  Either way each
    transported triple is re-verified against the target form and the primes
    of the determinant and of the instance data are reported as the S-delta.
    """
    if direction == "i_to_ii":
        if set(instance.roots) != {Fraction(0), Fraction(1), Fraction(-1)} or len(
            instance.cofactor
        ) != 1:
            raise ValueError(
                "i_to_ii needs the cubic instance with roots {0, 1, -1}"
            )
        matrix = _shear_matrix_i_to_ii()
    elif direction == "ii_to_i":
        matrix = _shear_matrix_ii_to_i(instance.roots)
    else:
        raise ValueError(f"unknown direction: {direction}")

    d = linalg.det(matrix)
    if d == 0:
        raise ValueError("singular change of variables (coincident roots)")
    target = XYForm()
    delta_values = [d] + [v for v in instance.extension_values() if v != 0]
    delta = frozenset().union(*(primes_of(v) for v in delta_values))
    s_prime = s.with_primes(delta)

    transported = []
    for sol in sols:
        nx, ny = linalg.matvec(matrix, (sol.x, sol.y))
        new = make_solution(target, nx, ny, s_prime)
        transported.append(new)
    return ShearResult(target, matrix, tuple(transported), delta, s_prime)


def transport_solutions(
    sols: Sequence[TMSolution],
    matrix: Sequence[Sequence[Fraction | int]],
    target: Form,
    s: SContext,
) -> tuple[TMSolution, ...]:
    """Apply an explicit change of variables to solutions and re-verify."""
    mat = linalg.as_matrix(matrix)
    out = []
    for sol in sols:
        nx, ny = linalg.matvec(mat, (sol.x, sol.y))
        out.append(make_solution(target, nx, ny, s))
    return tuple(out)


def unit_pair_to_point(
    eps1: Fraction | int, eps2: Fraction | int, s: SContext
) -> ProjPoint:
    """(eps1, eps2) with eps1 + eps2 = 1 becomes the point (eps1 : 1)."""
    eps1, eps2 = Fraction(eps1), Fraction(eps2)
    if eps1 + eps2 != 1:
        raise ValueError("pair must sum to 1")
    if not (is_s_unit(eps1, s) and is_s_unit(eps2, s)):
        raise ValueError("both entries must be S-units")
    return normalize((eps1, 1))


def point_to_unit_pair(point: ProjPoint, s: SContext) -> Fraction:
    """An integral point of the thrice-punctured line yields u with u, 1-u units."""
    if not is_s_integral(point, THREE_POINTS, s):
        raise ValueError("point is not S-integral on the thrice-punctured line")
    a, b = point.coords
    return Fraction(a, b)


def unit_point_dictionary(direction: str, datum, s: SContext):
    if direction == "unit_to_point":
        eps1, eps2 = datum
        return unit_pair_to_point(eps1, eps2, s)
    if direction == "point_to_unit":
        return point_to_unit_pair(datum, s)
    raise ValueError(f"unknown direction: {direction}")
