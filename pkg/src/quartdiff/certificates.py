"""Certificate assembly, JSON serialization, and independent verification.

A certificate is a tree of elimination steps proving one of three outcomes
for n: representable (with an exact witness), not representable (every
descent triple is covered by exactly one eliminating step), or undecided
(the uncovered triples are listed).  verify_certificate re-checks every step
from its raw data using only cheap deterministic re-computations: exact
arithmetic identities, exhaustive residue loops at the recorded levels, the
curve group law, and set recomputation.  It never re-runs any search.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import curves as _curves
from .arith import factorize, fourth_power_free, is_square, residue_table
from .descent import OctalEquation, coprime_ordered_triples, mordell_filter, reduce_to_triples
from .gaussian import (
    AlphaCase,
    GaussInt,
    classical_form_filter,
    enumerate_alpha,
    expand_case,
    unit_constraints_for,
)
from .localsolve import (
    QuarticSystem,
    Verdict,
    obstruction_at_level,
    octal_diagonal_form,
    pythag_diagonal_form,
    scheme_local_solubility,
    torsor_locally_soluble,
)
from .pythag import pythag_systems, two_monomial_split
from .sieve import local_images, make_sieve_data, subgroup_mod_p
from .witness import Witness, verify_witness

FORMAT = "quartdiff-certificate-v1"


class VerificationError(Exception):
    """Raised with the first failing step identified."""


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------


def _point_to_json(pt) -> list | None:
    if pt is _curves.INFINITY:
        return None
    x, y = Fraction(pt[0]), Fraction(pt[1])
    return [[x.numerator, x.denominator], [y.numerator, y.denominator]]


def _point_from_json(obj):
    if obj is None:
        return _curves.INFINITY
    (xn, xd), (yn, yd) = obj
    return (Fraction(xn, xd), Fraction(yn, yd))


def triple_json(eq: OctalEquation) -> dict:
    return {
        "a": eq.a,
        "b": eq.b,
        "c": eq.c,
        "n_prime": eq.n_prime,
        "branch": eq.branch,
    }


def triple_from_json(obj: dict, origin_n: int) -> OctalEquation:
    return OctalEquation(
        obj["a"], obj["b"], obj["c"], obj["n_prime"], origin_n, obj["branch"]
    )


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_certificate(cert: dict) -> bool:
    """Re-check every step of a certificate; raise VerificationError on the
    first failing step.  Returns True when everything verifies."""
    if cert.get("format") != FORMAT:
        raise VerificationError("unknown certificate format")
    n = cert["n"]
    red = cert["reduction"]
    k, n_prime = red["k"], red["n_prime"]
    if k**4 * n_prime != n:
        raise VerificationError("reduction: k^4 * n' != n")
    decomp = fourth_power_free(n)
    if (decomp.k, decomp.n_prime) != (k, n_prime):
        raise VerificationError("reduction: n' is not the fourth-power-free part")

    outcome = cert["outcome"]
    if outcome == "representable":
        w = cert["witness"]
        if not verify_witness(n, Witness(w["x"], w["y"], w["z"])):
            raise VerificationError("witness: invariants fail")
        return True

    if outcome not in ("not-representable", "undecided"):
        raise VerificationError(f"unknown outcome {outcome!r}")

    if cert.get("easy_rank0") is not None:
        _verify_rank0(cert["easy_rank0"], n_prime=n_prime, step_name="easy_rank0")
        if outcome != "not-representable":
            raise VerificationError("easy curve eliminated but outcome not negative")
        return True

    # triple coverage: the recorded triples must exactly match the reduction
    expected = {e.key() for e in reduce_to_triples(n_prime)}
    recorded = []
    for tj in cert["triples"]:
        eq = triple_from_json(tj, n_prime)
        recorded.append((eq, tj))
    got = {eq.key() for eq, _ in recorded}
    if got != expected:
        raise VerificationError("triples: recorded set differs from the reduction")

    undecided = 0
    for eq, tj in recorded:
        step = tj.get("step")
        if step is None:
            undecided += 1
            continue
        _verify_triple_step(eq, step)
    if outcome == "not-representable" and undecided:
        raise VerificationError("outcome negative but some triple lacks a step")
    if outcome == "undecided" and not undecided:
        raise VerificationError("outcome undecided but every triple has a step")
    return True


def _verify_triple_step(eq: OctalEquation, step: dict) -> None:
    kind = step["kind"]
    name = f"triple ({eq.a},{eq.b},{eq.c}) step {kind}"
    if kind == "mordell-form":
        got = mordell_filter(eq)
        if got is None:
            raise VerificationError(f"{name}: shape conditions do not hold")
        if step["kappa"] ** 4 != eq.c:
            raise VerificationError(f"{name}: kappa^4 != c")
        side = step["square_side"]
        value = eq.a if side == "a" else eq.b
        if step["beta"] ** 2 != value:
            raise VerificationError(f"{name}: beta^2 mismatch")
    elif kind == "local-obstruction":
        form = octal_diagonal_form(eq.a, eq.b, eq.c)
        if not obstruction_at_level(form, step["p"], step["k"]):
            raise VerificationError(f"{name}: residue loop finds an admissible solution")
    elif kind == "hard-rank0":
        _verify_rank0(step, eq=eq, step_name=name)
    elif kind == "mw-sieve":
        _verify_sieve(eq, step, name)
    elif kind == "pythag":
        _verify_pythag(eq, step, name)
    elif kind == "gaussian":
        _verify_gaussian(eq, step, name)
    else:
        raise VerificationError(f"{name}: unknown step kind")


def _expected_curve_A(kind: str, n_prime: int | None, eq: OctalEquation | None) -> int:
    cmap = _curves.CurveMap(
        kind, n=n_prime, abc=None if eq is None else (eq.a, eq.b, eq.c)
    )
    return cmap.curve().A


def _verify_rank0(step: dict, n_prime: int | None = None, eq: OctalEquation | None = None,
                  step_name: str = "rank0") -> None:
    kind = step["curve_kind"]
    A = step["A"]
    if _expected_curve_A(kind, n_prime, eq) != A:
        raise VerificationError(f"{step_name}: curve coefficient mismatch")
    curve = _curves.Curve(A)

    # every claimed-insoluble torsor must re-verify; the counted ones are
    # taken at face value (extra counted torsors only weaken the bound)
    counted = {1: 0, 2: 0}
    for side, K in ((1, A), (2, -4 * A)):
        for entry in step["descent"][str(side)]:
            d, counted_flag = entry["d"], entry["counted"]
            if K % d != 0:
                raise VerificationError(f"{step_name}: d does not divide K")
            g = K // d
            if counted_flag:
                counted[side] += 1
                continue
            reason = entry["reason"]
            if reason == "real-insoluble":
                if not (d < 0 and g < 0):
                    raise VerificationError(f"{step_name}: bogus real obstruction")
            else:
                p = int(reason.split("@")[1])
                verdict = torsor_locally_soluble(d, g, p)
                if verdict.verdict is not Verdict.INSOLUBLE:
                    raise VerificationError(
                        f"{step_name}: torsor d={d} not insoluble at {p}"
                    )
        # the recorded divisor list must be complete
        expected_ds = set()
        for d0 in _squarefree_divisors_abs(K):
            expected_ds.update((d0, -d0))
        got_ds = {entry["d"] for entry in step["descent"][str(side)]}
        if got_ds != expected_ds:
            raise VerificationError(f"{step_name}: divisor enumeration incomplete")
    bound = max(
        (counted[1] - 1).bit_length() + (counted[2] - 1).bit_length() - 2, 0
    )
    if bound != 0:
        raise VerificationError(f"{step_name}: recomputed bound is {bound}, not 0")

    torsion = [_point_from_json(p) for p in step["torsion"]]
    if not _torsion_is_complete(curve, torsion):
        raise VerificationError(f"{step_name}: torsion list incomplete or wrong")
    cmap = _curves.CurveMap(
        kind, n=n_prime, abc=None if eq is None else (eq.a, eq.b, eq.c)
    )
    for pt in torsion:
        if pt is _curves.INFINITY or pt[0] == 0 or pt[1] == 0:
            continue
        if _curves.map_preimage_nondegenerate(cmap, pt):
            raise VerificationError(f"{step_name}: torsion point has a nonzero preimage")


def _squarefree_divisors_abs(K: int) -> list[int]:
    divs = [1]
    for p, _ in factorize(abs(K)):
        divs += [d * p for d in divs]
    return divs


def _torsion_is_complete(curve: _curves.Curve, torsion) -> bool:
    """The claimed list must be the full torsion subgroup: all points on the
    curve, all of finite order, closed under the group law, and containing
    every Lutz-Nagell survivor found independently."""
    if _curves.INFINITY not in torsion:
        return False
    for pt in torsion:
        if not curve.contains(pt):
            return False
        if pt is not _curves.INFINITY and not _order_le(curve, pt, 12):
            return False
    independent = set(_freeze(p) for p in _curves.torsion_subgroup(curve))
    return independent == set(_freeze(p) for p in torsion)


def _order_le(curve, pt, cap) -> bool:
    acc = pt
    for _ in range(cap):
        if acc is _curves.INFINITY:
            return True
        acc = _curves.group_law(curve, acc, pt)
    return False


def _freeze(pt):
    if pt is _curves.INFINITY:
        return None
    return (Fraction(pt[0]), Fraction(pt[1]))


def _verify_sieve(eq: OctalEquation, step: dict, name: str) -> None:
    kind = step["curve_kind"]
    A = step["curve_A"]
    if _expected_curve_A(kind, None, eq) != A:
        raise VerificationError(f"{name}: curve coefficient mismatch")
    curve = _curves.Curve(A)
    p = step["p"]
    if not curve.good_prime(p) or (2 * eq.a * eq.b * eq.c) % p == 0:
        raise VerificationError(f"{name}: invalid sieve prime")
    gens = [_point_from_json(g) for g in step["generators"]]
    for g in gens:
        if not curve.contains(g):
            raise VerificationError(f"{name}: generator not on curve")
    if not step.get("conditional", False):
        raise VerificationError(f"{name}: sieve steps must be flagged conditional")
    data = make_sieve_data(curve, gens, p)
    if list(data.periods) != list(step["periods"]):
        raise VerificationError(f"{name}: periods mismatch")
    sub = {(q.X, q.Y, q.Z) for q in subgroup_mod_p(data)}
    if sub != {tuple(t) for t in step["subgroup"]}:
        raise VerificationError(f"{name}: subgroup recomputation differs")
    cmap = _curves.CurveMap(kind, abc=(eq.a, eq.b, eq.c))
    imgs = {(q.X, q.Y, q.Z) for q in local_images(eq, cmap, p)}
    if imgs != {tuple(t) for t in step["images"]}:
        raise VerificationError(f"{name}: image recomputation differs")
    if sub & imgs:
        raise VerificationError(f"{name}: intersection is not empty")


def _verify_pythag(eq: OctalEquation, step: dict, name: str) -> None:
    systems = pythag_systems(eq)
    if not systems:
        raise VerificationError(f"{name}: c is not a perfect square")
    rows = [tuple(r) for r in step["rows"]]
    expected_rows = set()
    for sys in systems:
        for d, e in two_monomial_split(sys.even_side):
            expected_rows.add((sys.branch, d, e, sys.odd_side))
    got_rows = {(r[0], r[1], r[2], r[3]) for r in rows}
    if got_rows != expected_rows:
        raise VerificationError(f"{name}: derived equation set incomplete")
    for branch, d, e, B, p, k in rows:
        form = pythag_diagonal_form(d, e, B)
        if not obstruction_at_level(form, p, k):
            raise VerificationError(
                f"{name}: derived ({d},{e}) not obstructed mod {p}^{k}"
            )


def _verify_gaussian(eq: OctalEquation, step: dict, name: str) -> None:
    cases = step["cases"]
    # completeness: every enumerated case must be covered exactly
    expected = {((c.alpha.re, c.alpha.im), c.epsilon) for c in enumerate_alpha(eq)}
    if not expected:
        raise VerificationError(f"{name}: no admissible alpha exists")
    got = {(tuple(c["alpha"]), c["eps"]) for c in cases}
    if got != expected:
        raise VerificationError(f"{name}: case list differs from the enumeration")
    for c in cases:
        alpha = GaussInt(*c["alpha"])
        case = AlphaCase(alpha, c["eps"])
        sys = expand_case(case, eq.a, eq.b)
        if list(sys.f_coeffs) != list(c["F"]) or list(sys.g_coeffs) != list(c["G"]):
            raise VerificationError(f"{name}: quartic expansion mismatch")
        # polynomial identity F^2 + G^2 = N(alpha) (s^2+t^2)^4
        if _form_square_sum(sys.f_coeffs, sys.g_coeffs) != tuple(
            alpha.norm() * c2 for c2 in _S2T2_POW4
        ):
            raise VerificationError(f"{name}: norm identity fails")
        mech = c["mechanism"]
        if mech == "classical-form":
            if classical_form_filter(sys) is None:
                raise VerificationError(f"{name}: classical form filter does not apply")
        elif mech in ("scheme", "scheme-constrained"):
            target = sys
            if mech == "scheme-constrained":
                allowed = set(unit_constraints_for(eq, c["p"]))
                if not set(c["constraints"]) <= allowed:
                    raise VerificationError(f"{name}: unjustified unit constraint")
                target = sys.with_constraints(*c["constraints"])
            verdict = scheme_local_solubility(target, c["p"], depth=c["level"])
            if verdict.verdict is not Verdict.INSOLUBLE:
                raise VerificationError(
                    f"{name}: scheme not insoluble at {c['p']} within level {c['level']}"
                )
        else:
            raise VerificationError(f"{name}: unknown mechanism {mech!r}")


def _poly_mul(u, v):
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            out[i + j] += a * b
    return tuple(out)


def _form_square_sum(f, g):
    return tuple(x + y for x, y in zip(_poly_mul(f, f), _poly_mul(g, g)))


_S2T2_POW4 = _poly_mul(_poly_mul((1, 0, 1), (1, 0, 1)), _poly_mul((1, 0, 1), (1, 0, 1)))
