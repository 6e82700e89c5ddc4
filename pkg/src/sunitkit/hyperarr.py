"""Coverings of S-integral points on P^n minus n+2 hyperplanes.

The standard arrangement in P^n is X_0, ..., X_n together with
X_0 + ... + X_n; its S-integral points are exactly the (n+2)-term vanishing
sums of S-units, so the enumerator splits them into the finitely many
non-degenerate points and the degenerate ones, which are covered by the
hyperplanes sum(X_i, i in I) = 0 coming from their vanishing subsums.
Arbitrary arrangements reduce to the standard one through an exact
rank/reorder step and a coordinate change whose trail is reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import EnumerationCapExceeded
from .projective import Hyperplane, ProjPoint, normalize
from .sarith import (
    DEFAULT_ENUMERATION_CAP,
    SContext,
    extend_s,
    is_s_unit,
    max_abs_exponent,
)
from .unitsolve import vanishing_subsums


@dataclass(frozen=True)
class LinearFormSystem:
    """n+2 pairwise distinct hyperplanes of P^n."""

    forms: tuple[Hyperplane, ...]

    def __post_init__(self):
        if not self.forms:
            raise ValueError("empty system")
        width = len(self.forms[0].coeffs)
        if any(len(f.coeffs) != width for f in self.forms):
            raise ValueError("forms must share the ambient dimension")
        if len(self.forms) != width + 1:
            raise ValueError("need n+2 forms in n+1 variables")
        if len(set(self.forms)) != len(self.forms):
            raise ValueError("hyperplanes must be pairwise distinct")

    @classmethod
    def of(cls, rows: Sequence[Sequence[Fraction | int]]) -> "LinearFormSystem":
        return cls(tuple(Hyperplane.of(*row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.forms[0].coeffs) - 1


@dataclass(frozen=True)
class SubspaceModel:
    """Projective linear subspace spanned by independent basis rows."""

    basis: linalg.Matrix

    def __post_init__(self):
        if linalg.rank(self.basis) != len(self.basis):
            raise ValueError("basis rows must be independent")

    @classmethod
    def of(cls, rows: Sequence[Sequence[Fraction | int]]) -> "SubspaceModel":
        return cls(linalg.as_matrix(rows))

    @property
    def dimension(self) -> int:
        return len(self.basis) - 1

    @property
    def ambient(self) -> int:
        return len(self.basis[0]) - 1


@dataclass(frozen=True)
class Dependency:
    """rank-1, a permutation of the forms, and the forced linear relation.

    After permuting, forms 0..r are independent and form r+1 equals
    sum(coefficients[j] * form_j, j = 0..m) with every coefficient nonzero
    and m as small as any linear relation among the forms allows.
    """

    r: int
    permutation: tuple[int, ...]
    coefficients: tuple[Fraction, ...]


def _smallest_circuit(rows: linalg.Matrix) -> tuple[int, ...]:
    indices = range(len(rows))
    for size in range(2, len(rows) + 1):
        for subset in itertools.combinations(indices, size):
            sub = tuple(rows[i] for i in subset)
            if linalg.rank(sub) == size - 1:
                return subset
    raise ValueError("no linear dependency among the forms")


def rank_and_reorder(system: LinearFormSystem) -> Dependency:
    """Exact Gaussian-elimination preprocessing of the n+2 forms.

    Finds a smallest dependent subset (so the relation has no zero
    coefficients and minimal length), reorders the forms to put its
    independent part first, extends that to a maximal independent prefix,
    and places the dependent form right after it.
    """
    rows = linalg.as_matrix([f.coeffs for f in system.forms])
    circuit = _smallest_circuit(rows)
    *support, dependent = circuit
    order = list(support)
    for i in range(len(rows)):
        if i in circuit:
            continue
        if linalg.rank(tuple(rows[j] for j in order + [i])) == len(order) + 1:
            order.append(i)
    r = len(order) - 1
    permutation = tuple(order + [dependent] + sorted(
        set(range(len(rows))) - set(order) - {dependent}
    ))
    basis = tuple(rows[i] for i in support)
    coeffs = linalg.solve_in_row_space(basis, rows[dependent])
    if coeffs is None or any(c == 0 for c in coeffs):
        raise RuntimeError("circuit decomposition failed")
    return Dependency(r, permutation, coeffs)


def standard_hyperplanes(n: int) -> tuple[Hyperplane, ...]:
    """X_0, ..., X_n followed by X_0 + ... + X_n."""
    forms = []
    for i in range(n + 1):
        coeffs = [0] * (n + 1)
        coeffs[i] = 1
        forms.append(Hyperplane.of(*coeffs))
    forms.append(Hyperplane.of(*([1] * (n + 1))))
    return tuple(forms)


def lemma_hypothesis(coords: Sequence[Fraction | int]) -> bool:
    """All coordinates nonzero and no subsum of 1..n of them vanishing."""
    vals = [Fraction(c) for c in coords]
    if any(v == 0 for v in vals):
        return False
    return not vanishing_subsums(vals, min_size=1)


def distinct_traces(subspace: SubspaceModel) -> int:
    """Number of distinct intersections with the coordinate hyperplanes.

    The subspace must lie inside the zero-sum hyperplane and inside no
    coordinate hyperplane.  For a line spanned by u, v the intersection with
    X_i = 0 is the point v_i*u - u_i*v, so the count is the number of
    distinct classes (v_i : -u_i); higher dimensions intersect exactly and
    deduplicate by reduced row echelon form.
    """
    basis = subspace.basis
    n_coords = len(basis[0])
    for row in basis:
        if sum(row) != 0:
            raise ValueError("subspace is not inside the zero-sum hyperplane")
    for i in range(n_coords):
        if all(row[i] == 0 for row in basis):
            raise ValueError(f"subspace lies inside the coordinate hyperplane {i}")

    if len(basis) == 2:
        u, v = basis
        seen = set()
        for ui, vi in zip(u, v):
            seen.add(normalize((vi, -ui)).coords)
        return len(seen)

    seen = set()
    for i in range(n_coords):
        functional = tuple(
            (row[i],) for row in basis
        )
        coeff_basis = linalg.nullspace(linalg.transpose(linalg.as_matrix(functional)))
        rows = tuple(
            linalg.matvec(linalg.transpose(basis), c) for c in coeff_basis
        )
        reduced, _ = linalg.rref(rows)
        seen.add(reduced)
    return len(seen)


@dataclass(frozen=True)
class CoveringResult:
    """Output of the standard-arrangement covering enumeration."""

    hyperplanes: tuple[Hyperplane, ...]
    exceptional_points: tuple[ProjPoint, ...]
    degenerate_points: tuple[ProjPoint, ...]

    def to_json(self) -> dict:
        return {
            "hyperplanes": [h.to_json() for h in self.hyperplanes],
            "exceptional_points": [p.to_json() for p in self.exceptional_points],
            "degenerate_points": [p.to_json() for p in self.degenerate_points],
        }


def covering_hyperplanes(
    n: int,
    s: SContext,
    bound: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> CoveringResult:
    """Enumerate S-integral points of P^n minus the standard n+2 hyperplanes.

    Points are walked in normalized unit coordinates (1 : u_1 : ... : u_n)
    with every unit's exponent vector in the +-bound box, including the
    forced value -(1 + sum u_i).  Non-degenerate points form the finite
    exceptional list; each degenerate point is covered by a subsum hyperplane
    sum(X_i, i in I) = 0 read off from its vanishing subsums, and the
    covering is verified before returning.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    exceptional: list[ProjPoint] = []
    degenerate: list[ProjPoint] = []
    plane_keys: set[tuple[int, ...]] = set()
    count = 0

    def units():
        exp_range = range(-bound, bound + 1)
        for sign in (-1, 1):
            for exps in itertools.product(exp_range, repeat=len(s.primes)):
                v = Fraction(sign)
                for p, e in zip(s.primes, exps):
                    v *= Fraction(p) ** e
                yield v

    for combo in itertools.product(*(units() for _ in range(n))):
        count += 1
        if count > cap:
            raise EnumerationCapExceeded(
                "enumeration cap exceeded",
                partial=(tuple(exceptional), tuple(degenerate)),
            )
        last = -(1 + sum(combo))
        if last == 0 or not is_s_unit(last, s):
            continue
        if max_abs_exponent(last, s) > bound:
            continue
        point = normalize((Fraction(1),) + combo)
        tuple_entries = (Fraction(1),) + combo + (last,)
        subsums = vanishing_subsums(tuple_entries, min_size=2)
        if not subsums:
            exceptional.append(point)
            continue
        degenerate.append(point)
        for idx in subsums:
            if n + 1 in idx:
                idx = tuple(sorted(set(range(n + 2)) - set(idx)))
            if len(idx) < 2:
                raise RuntimeError("vanishing singleton from a nonzero entry")
            key = tuple(1 if i in idx else 0 for i in range(n + 1))
            plane_keys.add(key)

    hyperplanes = tuple(Hyperplane.of(*key) for key in sorted(plane_keys))
    result = CoveringResult(
        hyperplanes,
        tuple(sorted(exceptional, key=lambda p: p.coords)),
        tuple(sorted(degenerate, key=lambda p: p.coords)),
    )
    if not verify_covering(result.degenerate_points, result.hyperplanes):
        raise RuntimeError("covering verification failed")
    return result


def verify_covering(
    points: Sequence[ProjPoint], hyperplanes: Sequence[Hyperplane]
) -> bool:
    """True iff every point satisfies at least one hyperplane equation exactly."""
    return all(
        any(h.evaluate(p) == 0 for h in hyperplanes) for p in points
    )


@dataclass(frozen=True)
class ReductionTrail:
    """Record of reducing an arbitrary arrangement to a standard one.

    The new coordinates are Y_j = a_j * L_j for j <= m, Y_j = L_j for the
    remaining independent forms, completed by unit vectors; in them the first
    m+2 removed hyperplanes become Y_0, ..., Y_m and Y_0 + ... + Y_m, i.e.
    the standard arrangement of the P^m cut out by Y_{m+1} = ... = Y_n = 0.
    """

    dependency: Dependency
    matrix: linalg.Matrix
    m: int
    s_delta: frozenset[int]
    context: SContext

    def to_json(self) -> dict:
        return {
            "rank_minus_one": self.dependency.r,
            "permutation": list(self.dependency.permutation),
            "coefficients": [str(c) for c in self.dependency.coefficients],
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "m": self.m,
            "s_delta": sorted(self.s_delta),
            "primes": self.context.to_json(),
        }


def reduce_arrangement(system: LinearFormSystem, s: SContext) -> ReductionTrail:
    """Build the coordinate change taking an arrangement to standard shape."""
    dep = rank_and_reorder(system)
    rows = linalg.as_matrix([f.coeffs for f in system.forms])
    m = len(dep.coefficients) - 1
    new_rows = [
        tuple(a * x for x in rows[dep.permutation[j]])
        for j, a in enumerate(dep.coefficients)
    ]
    for j in range(m + 1, dep.r + 1):
        new_rows.append(rows[dep.permutation[j]])
    width = len(rows[0])
    for i in range(width):
        if len(new_rows) == width:
            break
        unit = tuple(Fraction(1 if c == i else 0) for c in range(width))
        if linalg.rank(tuple(new_rows) + (unit,)) == len(new_rows) + 1:
            new_rows.append(unit)
    matrix = tuple(new_rows)
    d = linalg.det(matrix)
    # generous extension: determinant plus every nonzero entry, so both the
    # coordinate change and the per-form rescalings stay unit-harmless
    s_prime = extend_s(s, [d] + [e for row in matrix for e in row if e != 0])
    return ReductionTrail(
        dep, matrix, m, frozenset(set(s_prime.primes) - set(s.primes)), s_prime
    )
