"""Command-line front end: batch solvers, transports and verification suites.

JSON is the canonical output format; the text and TSV renderings are derived
from the same report dictionaries.  Exit codes: 0 on success, 1 when a
verification fails, 2 for usage errors.  The SUNITKIT_CAP environment
variable overrides the default enumeration cap.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from fractions import Fraction

from . import approx, curves, hyperarr, thuemahler, unitsolve
from .errors import EnumerationCapExceeded
from .projective import Hyperplane, is_s_integral, normalize, quadratic_embed
from .sarith import DEFAULT_ENUMERATION_CAP, SContext, rational_from_str
from .thuemahler import BinaryFormSpec, XYForm

DEFAULT_SEED = 20240801


class SpecParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _split_segments(text: str) -> list[tuple[int, str]]:
    segments = []
    offset = 0
    for part in text.split(";"):
        segments.append((offset, part.strip()))
        offset += len(part) + 1
    return segments


def _parse_rational_list(body: str, position: int) -> list[Fraction]:
    vals = []
    for token in body.split(","):
        token = token.strip()
        try:
            vals.append(rational_from_str(token))
        except (ValueError, ZeroDivisionError):
            raise SpecParseError(f"bad rational {token!r}", position) from None
    return vals


def parse_equation_spec(text: str):
    """Parse an equation/arrangement description.

    Grammar: semicolon-separated "key=value" segments with comma-separated
    exact rationals ("roots=0,1,-1;k=1;H=1", "form=xy(x-y)",
    "family=mordell;k=-2"), or bare semicolon-separated coefficient vectors
    for a hyperplane system ("1,0,1;0,1,1;...").
    """
    segments = _split_segments(text)
    if not any(seg for _, seg in segments):
        raise SpecParseError("empty specification", 0)
    keyed: dict[str, tuple[int, str]] = {}
    bare: list[tuple[int, str]] = []
    for pos, seg in segments:
        if not seg:
            continue
        if "=" in seg:
            key, _, value = seg.partition("=")
            keyed[key.strip()] = (pos, value.strip())
        else:
            bare.append((pos, seg))

    if "family" in keyed:
        return _parse_curve(keyed)
    if "form" in keyed:
        pos, value = keyed["form"]
        if value != "xy(x-y)":
            raise SpecParseError(f"unknown form {value!r}", pos)
        k = Fraction(1)
        if "k" in keyed:
            k = _parse_rational_list(*reversed(keyed["k"]))[0]
        return XYForm(k)
    if "roots" in keyed:
        pos, value = keyed["roots"]
        roots = _parse_rational_list(value, pos)
        if len(roots) != 3 or len(set(roots)) != 3:
            raise SpecParseError("need exactly three distinct roots", pos)
        cofactor = [Fraction(1)]
        if "H" in keyed:
            cofactor = _parse_rational_list(*reversed(keyed["H"]))
        k = Fraction(1)
        if "k" in keyed:
            kpos, kval = keyed["k"]
            k = _parse_rational_list(kval, kpos)[0]
            if k == 0:
                raise SpecParseError("k must be nonzero", kpos)
        return BinaryFormSpec.of(roots, cofactor, k)
    if bare and not keyed:
        rows = [_parse_rational_list(seg, pos) for pos, seg in bare]
        try:
            return hyperarr.LinearFormSystem.of(rows)
        except ValueError as exc:
            raise SpecParseError(str(exc), bare[0][0]) from None
    pos = segments[0][0]
    raise SpecParseError("unrecognized specification", pos)


def _parse_curve(keyed: dict[str, tuple[int, str]]):
    pos, family = keyed["family"]
    def rat(key):
        kpos, value = keyed[key]
        return _parse_rational_list(value, kpos)[0]
    def rats(key):
        kpos, value = keyed[key]
        return _parse_rational_list(value, kpos)
    try:
        if family == "mordell":
            return curves.mordell(rat("k"))
        if family == "elliptic":
            return curves.elliptic(rats("f"))
        if family == "hyperelliptic":
            return curves.hyperelliptic(rats("f"))
        if family == "superelliptic":
            mpos, mval = keyed["m"]
            return curves.superelliptic(rats("f"), int(mval))
        if family == "thue":
            return curves.thue_classic(rats("roots"), rat("k"))
        if family == "siegel":
            ppos, pval = keyed["primes"]
            primes = [int(p) for p in pval.split(",")] if pval else []
            return curves.siegel_units(rat("a1"), rat("a2"), SContext.of(*primes))
    except KeyError as exc:
        raise SpecParseError(f"missing parameter {exc.args[0]}", pos) from None
    except ValueError as exc:
        raise SpecParseError(str(exc), pos) from None
    raise SpecParseError(f"unknown family {family!r}", pos)


def serialize_spec(obj) -> str:
    if isinstance(obj, (BinaryFormSpec, XYForm)):
        return obj.describe()
    if isinstance(obj, hyperarr.LinearFormSystem):
        return ";".join(",".join(str(c) for c in f.coeffs) for f in obj.forms)
    if isinstance(obj, curves.CurveSpec):
        fam = obj.family.value
        if obj.family is curves.Family.MORDELL:
            return f"family={fam};k={obj.k}"
        if obj.family in (curves.Family.ELLIPTIC, curves.Family.HYPERELLIPTIC):
            return f"family={fam};f={','.join(str(c) for c in obj.coeffs)}"
        if obj.family is curves.Family.SUPERELLIPTIC:
            return f"family={fam};f={','.join(str(c) for c in obj.coeffs)};m={obj.m}"
        if obj.family is curves.Family.THUE_CLASSIC:
            return (
                f"family={fam};roots={','.join(str(r) for r in obj.roots)};k={obj.k}"
            )
        return (
            f"family={fam};a1={obj.a1};a2={obj.a2}"
            f";primes={','.join(str(p) for p in obj.s.primes)}"
        )
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _parse_primes(text: str) -> SContext:
    text = text.strip()
    if not text:
        return SContext.of()
    return SContext.of(*(int(p) for p in text.split(",")))


def _default_cap() -> int:
    return int(os.environ.get("SUNITKIT_CAP", DEFAULT_ENUMERATION_CAP))


# ---------------------------------------------------------------------------
# verification suites


def _check(checks, budget_state, name, fn):
    if budget_state["exhausted"]:
        return
    if time.monotonic() - budget_state["start"] > budget_state["budget"]:
        budget_state["exhausted"] = True
        return
    try:
        passed, detail = fn()
    except Exception as exc:  # a crashed check is a failed check
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    checks.append({"name": name, "passed": bool(passed), "detail": detail})


def _suite_prop21(seed: int):
    coeffs = (1, 0, 0, -2)
    checks = []

    def solutions():
        sols = approx.solve_thue_integer(coeffs, 1, 100)
        return sols == ((-1, -1), (1, 0)), f"solutions {sols}"

    def inequality():
        sols = [s for s in approx.solve_thue_integer(coeffs, 1, 100) if s[1] != 0]
        reports = [approx.verify_inequality(coeffs, 1, s, 64) for s in sols]
        ok = all(r.holds and r.decisive for r in reports)
        return ok, f"{len(reports)} solutions checked"

    def kappa_window():
        (res,) = approx.kappa_backward(coeffs, 1, 64)
        lo, hi = Fraction(8398, 10**4), Fraction(8400, 10**4)
        ok = lo <= res.kappa.lo and res.kappa.hi <= hi
        return ok, f"kappa in [{float(res.kappa.lo)}, {float(res.kappa.hi)}]"

    def kappa_doubles():
        (k1,), (k2,) = (approx.kappa_backward(coeffs, k, 64) for k in (1, 2))
        ok = k2.kappa.lo == 2 * k1.kappa.lo and k2.kappa.hi == 2 * k1.kappa.hi
        return ok, "kappa scales exactly with |k|"

    def forward():
        fb = approx.forward_bound(coeffs, Fraction(21, 25), Fraction(5, 4), 64)
        return fb.within is True and fb.value == 3, f"|F(5,4)| = {fb.value}"

    return [
        ("thue-solutions-height-100", solutions),
        ("solution-approximation-inequality", inequality),
        ("kappa-window", kappa_window),
        ("kappa-linear-in-k", kappa_doubles),
        ("good-approximant-forward-bound", forward),
    ]


def _suite_prop51(seed: int):
    s = SContext.of(2, 3)
    form = BinaryFormSpec.of((0, 1, -1))

    def solver():
        sols = thuemahler.solve_thue_mahler(form, s, 100)
        ok = bool(sols) and all(
            form.evaluate(t.x, t.y) == form.k * t.eps for t in sols
        )
        return ok, f"{len(sols)} classes at height 100"

    def round_trip():
        sols = thuemahler.solve_thue_mahler(form, s, 100)
        count = 0
        for t in sols:
            b1, b2, b3, gamma = thuemahler.transport_thue_to_unit(
                t, form.roots, s, form
            )
            back = thuemahler.transport_unit_to_thue(
                gamma, form.roots, form.k, b1, form
            )
            if (back.x, back.y, back.eps) != (t.x, t.y, t.eps):
                return False, f"round trip failed at {t.point}"
            count += 1
        return True, f"{count} round trips exact"

    def worked_instance():
        sol = thuemahler.make_solution(form, 2, 1, s)
        _, _, _, gamma = thuemahler.transport_thue_to_unit(sol, form.roots, s, form)
        back = thuemahler.transport_unit_to_thue(gamma, form.roots, 1, 2, form)
        ok = gamma == Fraction(1, 2) and (back.x, back.y, back.eps) == (2, 1, 6)
        return ok, f"gamma={gamma}"

    def dictionary():
        points = set()
        for x in range(0, 201):
            for y in range(-200, 201):
                if (x, y) == (0, 0) or (x == 0 and y != 1):
                    continue
                import math as _m
                if _m.gcd(x, abs(y)) != 1:
                    continue
                p = normalize((x, y))
                try:
                    if is_s_integral(p, thuemahler.THREE_POINTS, s):
                        points.add(p)
                except ValueError:
                    continue
        classes = unitsolve.solve_unit_equation(1, s, 8)
        images = {
            thuemahler.unit_pair_to_point(-c.entries[1], -c.entries[2], s)
            for c in classes
        }
        back_ok = True
        for p in points:
            u = thuemahler.point_to_unit_pair(p, s)
            if thuemahler.unit_pair_to_point(u, 1 - u, s) != p:
                back_ok = False
        return points == images and back_ok, (
            f"{len(points)} integral points == {len(images)} unit classes"
        )

    def shear():
        split = BinaryFormSpec.of((0, 1, -1))
        sols = [thuemahler.make_solution(split, 2, 1, s)]
        res = thuemahler.shear_transform(split, "i_to_ii", sols, s)
        ok = res.solutions[0].point == normalize((3, -1)) and res.s_delta <= {2}
        res2 = thuemahler.shear_transform(
            split, "ii_to_i", thuemahler.solve_thue_mahler(split, s, 20), s
        )
        ok = ok and all(
            t.x * t.y * (t.x - t.y) == t.eps for t in res2.solutions
        )
        return ok, f"pulled back to {res.solutions[0].point}"

    return [
        ("solver-classes", solver),
        ("factor-ratio-round-trip", round_trip),
        ("worked-instance", worked_instance),
        ("three-point-dictionary", dictionary),
        ("shear-transport", shear),
    ]


def _suite_prop61(seed: int):
    s = SContext.of(2, 3)

    def covering():
        result = hyperarr.covering_hyperplanes(2, s, 3)
        ok = hyperarr.verify_covering(result.degenerate_points, result.hyperplanes)
        classes = unitsolve.solve_unit_equation(2, s, 3)
        images = {
            normalize(c.entries[:3]) for c in classes
        }
        ok = ok and set(result.exceptional_points) == images
        return ok, (
            f"{len(result.exceptional_points)} exceptional, "
            f"{len(result.hyperplanes)} covering hyperplanes"
        )

    def line_traces():
        violations = 0
        total = 0
        for line, _witness in _lines_with_witness(2, 2):
            total += 1
            if hyperarr.distinct_traces(line) < 3:
                violations += 1
        return violations == 0 and total > 0, f"{total} lines, {violations} violations"

    def subspace_traces():
        rng = random.Random(seed)
        total = 0
        for _ in range(60):
            model = _random_subspace_with_witness(rng, n_max=4)
            if model is None:
                continue
            total += 1
            if hyperarr.distinct_traces(model) < model.dimension + 2:
                return False, "trace bound violated"
        return total > 0, f"{total} sampled subspaces"

    def rank_reorder():
        sys1 = hyperarr.LinearFormSystem.of([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]])
        dep = hyperarr.rank_and_reorder(sys1)
        rows = [sys1.forms[i].coeffs for i in dep.permutation]
        recon = [
            sum(a * Fraction(x) for a, x in zip(dep.coefficients, col))
            for col in zip(*rows[: len(dep.coefficients)])
        ]
        ok = tuple(recon) == tuple(Fraction(c) for c in rows[dep.r + 1])
        return ok and len(dep.coefficients) == 2, f"m={len(dep.coefficients) - 1}"

    def reduction_trail():
        sys1 = hyperarr.LinearFormSystem.of([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]])
        trail = hyperarr.reduce_arrangement(sys1, s)
        from . import linalg
        ok = linalg.det(trail.matrix) != 0 and trail.m == 1
        return ok, f"m={trail.m}, delta={sorted(trail.s_delta)}"

    return [
        ("standard-covering-n2", covering),
        ("line-traces", line_traces),
        ("subspace-traces", subspace_traces),
        ("rank-reorder-reconstruction", rank_reorder),
        ("reduction-trail", reduction_trail),
    ]


def _suite_potpourri(seed: int):
    def gamma_goldens():
        s2 = SContext.of(2)
        got1 = unitsolve.lift_gamma(
            unitsolve.unit_tuple((1, -1), SContext.of()), 3, 1, SContext.of(2)
        )
        got2 = unitsolve.lift_gamma(
            unitsolve.unit_tuple((1, 1, -2), s2), 5, 1, s2
        )
        got3 = unitsolve.lift_gamma(
            unitsolve.unit_tuple((1, -1), SContext.of()), 5, 2, SContext.of(2)
        )
        ok = (
            got1.entries == (3, -2, -1)
            and got2.entries == (5, 5, -8, -2)
            and got3.entries == (5, -3, -1, -1)
        )
        return ok, "three lifts match"

    def gamma_family():
        s2 = SContext.of(2)
        classes = unitsolve.solve_unit_equation(1, s2, 6)
        for c in classes:
            lifted = unitsolve.lift_gamma(c, 3, 1, s2)
            if unitsolve.vanishing_subsums(lifted.entries):
                return False, f"degenerate lift from {c.entries}"
        return bool(classes), f"{len(classes)} classes lifted"

    def binomial_identity():
        rng = random.Random(seed)
        for m in range(1, 9):
            for _ in range(100):
                eps = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
                if sum(unitsolve.binomial_expansion_terms(eps, m)) != 0:
                    return False, f"identity failed at m={m}, eps={eps}"
        return True, "m <= 8 x 100 random eps"

    def binomial_goldens():
        s23 = SContext.of(2, 3)
        t1, d1 = unitsolve.lift_binomial(3, 2, s23)
        t2, d2 = unitsolve.lift_binomial(2, 2, SContext.of(2))
        ok = t1.entries == (4, 6, -9, -1) and not d1 and d2
        return ok, f"entries {t1.entries}"

    def quadratic_surface():
        rng = random.Random(seed)
        golden = quadratic_embed(normalize((1, 2)), normalize((1, 3)))
        if golden.coords != (1, 2, 3, 6):
            return False, "golden embedding mismatch"
        for _ in range(200):
            a = normalize((rng.randint(-30, 30), rng.randint(1, 30)))
            b = normalize((rng.randint(-30, 30), rng.randint(1, 30)))
            t0, t1, t2, t3 = quadratic_embed(a, b).coords
            if t0 * t3 != t1 * t2:
                return False, f"surface equation failed at {a}, {b}"
        return True, "surface equation exact on 200 samples"

    return [
        ("gamma-lift-goldens", gamma_goldens),
        ("gamma-lift-family", gamma_family),
        ("binomial-identity", binomial_identity),
        ("binomial-goldens", binomial_goldens),
        ("quadratic-surface", quadratic_surface),
    ]


def _lines_with_witness(n: int, height: int):
    """Canonical lines of the zero-sum hyperplane with a valid witness point."""
    import itertools as it

    points = []
    witnesses = []
    rng = range(-height, height + 1)
    for coords in it.product(rng, repeat=n + 1):
        if sum(coords) != 0 or all(c == 0 for c in coords):
            continue
        try:
            p = normalize(coords)
        except ValueError:
            continue
        if p.coords != coords:
            continue
        points.append(coords)
        if hyperarr.lemma_hypothesis(coords):
            witnesses.append(coords)
    seen = set()
    for w in witnesses:
        for v in points:
            if v == w:
                continue
            from . import linalg
            basis = linalg.as_matrix([w, v])
            if linalg.rank(basis) != 2:
                continue
            reduced, _ = linalg.rref(basis)
            if reduced in seen:
                continue
            seen.add(reduced)
            yield hyperarr.SubspaceModel(basis), w


def _random_subspace_with_witness(rng: random.Random, n_max: int):
    from . import linalg

    n = rng.randint(2, n_max)
    for _ in range(200):
        coords = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(n)]
        coords.append(-sum(coords))
        if coords[-1] == 0 or not hyperarr.lemma_hypothesis(coords):
            continue
        s_dim = rng.randint(1, n - 1)
        rows = [tuple(Fraction(c) for c in coords)]
        for _ in range(40):
            if len(rows) == s_dim + 1:
                break
            cand = [rng.randint(-3, 3) for _ in range(n)]
            cand.append(-sum(cand))
            if all(c == 0 for c in cand):
                continue
            trial = rows + [tuple(Fraction(c) for c in cand)]
            if linalg.rank(tuple(trial)) == len(trial):
                rows = trial
        if len(rows) != s_dim + 1:
            continue
        model = hyperarr.SubspaceModel(tuple(rows))
        if any(
            all(row[i] == 0 for row in model.basis)
            for i in range(n + 1)
        ):
            continue
        return model
    return None


_SUITES = {
    "prop21": _suite_prop21,
    "prop51": _suite_prop51,
    "prop61": _suite_prop61,
    "potpourri": _suite_potpourri,
}


def run_verification_suite(
    name: str, budget: float = 300.0, seed: int = DEFAULT_SEED
) -> dict:
    """Run one named cross-module check suite within a time budget."""
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}")
    budget_state = {"start": time.monotonic(), "budget": budget, "exhausted": False}
    checks: list[dict] = []
    for check_name, fn in _SUITES[name](DEFAULT_SEED if seed is None else seed):
        _check(checks, budget_state, check_name, fn)
    report = {
        "suite": name,
        "checks": checks,
        "exhausted": budget_state["exhausted"],
        "passed": bool(checks)
        and not budget_state["exhausted"]
        and all(c["passed"] for c in checks),
    }
    return report


# ---------------------------------------------------------------------------
# rendering and command wiring


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    if fmt == "tsv":
        lines = []
        def walk(prefix, value):
            if isinstance(value, dict):
                for k in sorted(value):
                    walk(f"{prefix}.{k}" if prefix else k, value[k])
            elif isinstance(value, list):
                for i, v in enumerate(value):
                    walk(f"{prefix}[{i}]", v)
            else:
                lines.append(f"{prefix}\t{value}")
        walk("", report)
        return "\n".join(lines)
    if fmt == "text":
        return _render(report, "tsv").replace("\t", " = ")
    raise ValueError(f"unknown format {fmt}")


def _format_of(args) -> str:
    if getattr(args, "tsv", False):
        return "tsv"
    if getattr(args, "text", False):
        return "text"
    return "json"


def _add_common(parser):
    parser.add_argument("--json", action="store_true", help="JSON output (default)")
    parser.add_argument("--tsv", action="store_true", help="TSV output")
    parser.add_argument("--text", action="store_true", help="plain text output")
    parser.add_argument("--cap", type=int, default=None, help="enumeration cap")


def _cmd_solve_unit(args) -> tuple[dict, int]:
    s = _parse_primes(args.primes)
    classes = unitsolve.solve_unit_equation(
        args.n, s, args.bound, cap=args.cap or _default_cap()
    )
    return {
        "n": args.n,
        "primes": s.to_json(),
        "bound": args.bound,
        "classes": [[str(e) for e in c.entries] for c in classes],
        "count": len(classes),
    }, 0


def _cmd_solve_tm(args) -> tuple[dict, int]:
    s = _parse_primes(args.primes)
    if args.form == "xy(x-y)":
        form = XYForm(Fraction(args.k))
    elif args.form:
        raise SpecParseError(f"unknown form {args.form!r}", 0)
    else:
        roots = [rational_from_str(r) for r in args.roots.split(",")]
        cofactor = [rational_from_str(c) for c in args.cofactor.split(",")]
        form = BinaryFormSpec.of(roots, cofactor, rational_from_str(args.k))
    sols = thuemahler.solve_thue_mahler(
        form, s, args.height, cap=args.cap or _default_cap()
    )
    return {
        "form": form.describe(),
        "primes": s.to_json(),
        "height": args.height,
        "solutions": [
            {
                "x": str(t.x),
                "y": str(t.y),
                "eps": str(t.eps),
                "point": t.point.to_json(),
            }
            for t in sols
        ],
        "count": len(sols),
    }, 0


def _cmd_transport(args) -> tuple[dict, int]:
    s = _parse_primes(args.primes)
    roots = tuple(rational_from_str(r) for r in args.roots.split(","))
    form = BinaryFormSpec.of(roots, (1,), rational_from_str(args.k))
    if args.direction == "to-unit":
        sol = thuemahler.make_solution(form, rational_from_str(args.x),
                                       rational_from_str(args.y), s)
        b1, b2, b3, gamma = thuemahler.transport_thue_to_unit(sol, roots, s, form)
        return {
            "betas": [str(b1), str(b2), str(b3)],
            "gamma": str(gamma),
        }, 0
    sol = thuemahler.transport_unit_to_thue(
        rational_from_str(args.gamma), roots, form.k,
        rational_from_str(args.eta), form,
    )
    return {
        "x": str(sol.x), "y": str(sol.y), "eps": str(sol.eps),
        "point": sol.point.to_json(),
    }, 0


def _cmd_verify_approx(args) -> tuple[dict, int]:
    coeffs = [int(c) for c in args.poly.split(",")]
    report = approx.verify_inequality(coeffs, args.k, (args.x, args.y), args.prec)
    code = 0 if report.holds else 1
    return report.to_json(), code


def _cmd_check_integral(args) -> tuple[dict, int]:
    s = _parse_primes(args.primes)
    point = normalize([rational_from_str(c) for c in args.point.split(",")])
    system = [
        [rational_from_str(c) for c in row.split(",")]
        for row in args.hyperplanes.split(";")
    ]
    arrangement = [Hyperplane.of(*row) for row in system]
    integral = is_s_integral(point, arrangement, s)
    return {
        "point": point.to_json(),
        "hyperplanes": [h.to_json() for h in arrangement],
        "primes": s.to_json(),
        "integral": integral,
    }, 0


def _cmd_cover(args) -> tuple[dict, int]:
    s = _parse_primes(args.primes)
    if args.hyperplanes:
        system = hyperarr.LinearFormSystem.of(
            [
                [rational_from_str(c) for c in row.split(",")]
                for row in args.hyperplanes.split(";")
            ]
        )
        trail = hyperarr.reduce_arrangement(system, s)
        result = hyperarr.covering_hyperplanes(
            trail.m, trail.context, args.bound, cap=args.cap or _default_cap()
        ) if trail.m >= 1 else None
        out = {"reduction": trail.to_json()}
        if result is not None:
            out["covering"] = result.to_json()
        return out, 0
    result = hyperarr.covering_hyperplanes(
        args.n, s, args.bound, cap=args.cap or _default_cap()
    )
    return result.to_json(), 0


def _cmd_curve(args) -> tuple[dict, int]:
    s = _parse_primes(args.primes) if args.primes else None
    fam = args.family
    if fam == "mordell":
        spec = curves.mordell(rational_from_str(args.k))
    elif fam == "elliptic":
        spec = curves.elliptic([rational_from_str(c) for c in args.f.split(",")])
    elif fam == "hyperelliptic":
        spec = curves.hyperelliptic([rational_from_str(c) for c in args.f.split(",")])
    elif fam == "superelliptic":
        spec = curves.superelliptic(
            [rational_from_str(c) for c in args.f.split(",")], args.m
        )
    elif fam == "thue":
        spec = curves.thue_classic(
            [rational_from_str(r) for r in args.roots.split(",")],
            rational_from_str(args.k),
        )
    elif fam == "siegel":
        spec = curves.siegel_units(
            rational_from_str(args.a1), rational_from_str(args.a2),
            s or SContext.of(),
        )
    else:
        raise SpecParseError(f"unknown family {fam!r}", 0)
    points = curves.enumerate_points(spec, args.box, cap=args.cap or _default_cap())
    return {
        "spec": serialize_spec(spec),
        "box": args.box,
        "solutions": [[str(v) for v in pt] for pt in points],
        "count": len(points),
    }, 0


def _cmd_suite(args) -> tuple[dict, int]:
    report = run_verification_suite(args.name, args.budget, args.seed)
    return report, 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sunitkit",
        description="Exact desk-scale S-unit and Thue-Mahler machinery over Q",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-unit", help="classes of (n+2)-term unit sums")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--primes", default="")
    p.add_argument("--bound", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=_cmd_solve_unit)

    p = sub.add_parser("solve-tm", help="Thue-Mahler classes up to a height")
    p.add_argument("--roots", default="")
    p.add_argument("--cofactor", default="1")
    p.add_argument("--k", default="1")
    p.add_argument("--form", default="", help='special form: "xy(x-y)"')
    p.add_argument("--primes", default="")
    p.add_argument("--height", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=_cmd_solve_tm)

    p = sub.add_parser("transport", help="move solutions between shapes")
    p.add_argument("--direction", choices=["to-unit", "to-thue"], required=True)
    p.add_argument("--roots", required=True)
    p.add_argument("--k", default="1")
    p.add_argument("--primes", default="")
    p.add_argument("--x", default="0")
    p.add_argument("--y", default="0")
    p.add_argument("--gamma", default="0")
    p.add_argument("--eta", default="1")
    _add_common(p)
    p.set_defaults(fn=_cmd_transport)

    p = sub.add_parser("verify-approx", help="check the approximation inequality")
    p.add_argument("--poly", required=True, help="integer coefficients a0,a1,...")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--prec", type=int, default=64)
    _add_common(p)
    p.set_defaults(fn=_cmd_verify_approx)

    p = sub.add_parser("check-integral", help="S-integrality on a complement")
    p.add_argument("--point", required=True)
    p.add_argument("--hyperplanes", required=True)
    p.add_argument("--primes", default="")
    _add_common(p)
    p.set_defaults(fn=_cmd_check_integral)

    p = sub.add_parser("cover", help="covering hyperplanes for P^n minus n+2")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--primes", default="")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--hyperplanes", default="", help="arbitrary arrangement to reduce")
    _add_common(p)
    p.set_defaults(fn=_cmd_cover)

    p = sub.add_parser("curve", help="bounded enumeration for a curve family")
    p.add_argument("--family", required=True)
    p.add_argument("--k", default="1")
    p.add_argument("--f", default="")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--roots", default="")
    p.add_argument("--a1", default="1")
    p.add_argument("--a2", default="1")
    p.add_argument("--box", type=int, required=True)
    p.add_argument("--primes", default="")
    _add_common(p)
    p.set_defaults(fn=_cmd_curve)

    p = sub.add_parser("suite", help="run a named verification suite")
    p.add_argument("--name", required=True)
    p.add_argument("--budget", type=float, default=300.0)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_common(p)
    p.set_defaults(fn=_cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.fn(args)
    except (SpecParseError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(_render(report, _format_of(args)))
    return code


if __name__ == "__main__":
    sys.exit(main())
