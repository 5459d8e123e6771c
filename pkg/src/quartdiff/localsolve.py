"""Local solubility engines.

Three related checkers, all working level-by-level modulo p**k:

* obstruct_mod_prime_power: for diagonal forms carrying pairwise-coprimality
  side conditions, find a level at which every residue solution violates a
  condition (both members of some pair divisible by p).  This proves there is
  no integer solution satisfying the conditions.

* scheme_local_solubility: decide Q_p-solubility of the projective scheme
  {F(s,t) = a*u^4, G(s,t) = b*v^4} in P^3.  Insoluble is proven by running
  out of primitive residue classes at a finite level; Soluble requires an
  explicit point passing a Hensel lifting criterion; otherwise Unknown.

* torsor_locally_soluble: the same idea for the descent torsors
  N^2 = d*M^4 + g*e^4 (weighted-projective in (M, e, N)).

All verdicts of the Insoluble kind are sound unconditionally: a p-adic point
would reduce to a surviving class at every level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .arith import residue_table

DEFAULT_DEPTH_P2 = 12
DEFAULT_DEPTH_ODD = 6
SURVIVOR_CAP = 50000
HENSEL_TUPLE_CAP = 64


class Verdict(Enum):
    INSOLUBLE = "insoluble"
    SOLUBLE = "soluble"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LocalVerdict:
    verdict: Verdict
    p: int
    level: int | None = None  # level proving insolubility
    point: tuple[int, ...] | None = None  # witness for solubility

    @property
    def insoluble(self) -> bool:
        return self.verdict is Verdict.INSOLUBLE


def default_depth(p: int) -> int:
    return DEFAULT_DEPTH_P2 if p == 2 else DEFAULT_DEPTH_ODD


# ---------------------------------------------------------------------------
# Diagonal forms with coprimality side conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagonalForm:
    """c1*x1^e1 + c2*x2^e2 = c0*x0^e0 with gcd side conditions.

    Each coprimality pair ((m1, i), (m2, j)) asserts gcd(m1*x_i, m2*x_j) = 1,
    where indices 1, 2 name the left-hand variables and 0 the right-hand one.
    """

    terms: tuple[tuple[int, int], tuple[int, int]]  # ((c1, e1), (c2, e2))
    rhs: tuple[int, int]  # (c0, e0)
    pairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    names: tuple[str, str, str] = ("u", "v", "w")  # x1, x2, x0 for display

    def describe(self) -> str:
        (c1, e1), (c2, e2) = self.terms
        c0, e0 = self.rhs
        n1, n2, n0 = self.names
        return f"{c1}*{n1}^{e1} + {c2}*{n2}^{e2} = {c0}*{n0}^{e0}"


def octal_diagonal_form(a: int, b: int, c: int) -> DiagonalForm:
    """a^2 u^8 + b^2 v^8 = c w^4 with the three gcd conditions."""
    return DiagonalForm(
        terms=((a * a, 8), (b * b, 8)),
        rhs=(c, 4),
        pairs=(((a, 1), (b, 2)), ((a, 1), (c, 0)), ((b, 2), (c, 0))),
    )


def pythag_diagonal_form(d: int, e: int, big_b: int) -> DiagonalForm:
    """d^2 U^8 - e^2 V^8 = B v^4 with conditions inherited from the descent."""
    return DiagonalForm(
        terms=((d * d, 8), (-(e * e), 8)),
        rhs=(big_b, 4),
        pairs=(((d, 1), (e, 2)), ((d, 1), (big_b, 0)), ((e, 2), (big_b, 0))),
        names=("U", "V", "v"),
    )


@dataclass(frozen=True)
class LocalObstruction:
    """Witness that every solution mod p**k violates a coprimality pair."""

    p: int
    k: int
    form: DiagonalForm

    @property
    def modulus(self) -> int:
        return self.p**self.k


def _scaled_power_sets(coef: int, p: int, k: int, exponent: int):
    """Values coef*x^exponent mod p**k, attained by (any x, unit x)."""
    table = residue_table(p, k, exponent)
    mod = p**k
    any_set = frozenset(coef * r % mod for r in table.members)
    unit_set = frozenset(coef * r % mod for r in table.unit_members)
    return any_set, unit_set


def obstruction_at_level(form: DiagonalForm, p: int, k: int) -> bool:
    """True iff every solution of the form mod p**k violates some pair.

    Enumerates the two left-hand variables and uses power-residue tables for
    the right-hand side, so the cost is O(p^2k) not O(p^3k).
    """
    (c1, e1), (c2, e2) = form.terms
    c0, e0 = form.rhs
    mod = p**k
    rhs_any, rhs_unit = _scaled_power_sets(c0, p, k, e0)

    # coefficient-divisibility of each pair member is independent of x
    pairs_idx = tuple(
        ((m1 % p == 0, i1), (m2 % p == 0, i2)) for (m1, i1), (m2, i2) in form.pairs
    )

    pow1 = [c1 * pow(x, e1, mod) % mod for x in range(mod)]
    pow2 = [c2 * pow(x, e2, mod) % mod for x in range(mod)]

    for x1 in range(mod):
        t1 = pow1[x1]
        for x2 in range(mod):
            s = (t1 + pow2[x2]) % mod
            # p | m*x_i (i = 1, 2) is known now; pairs touching x0 constrain x0
            div = (None, x1 % p == 0, x2 % p == 0)
            need_unit_x0 = False
            dead = False
            for (mdiv1, i1), (mdiv2, i2) in pairs_idx:
                side1 = None if i1 == 0 else (mdiv1 or div[i1])
                side2 = None if i2 == 0 else (mdiv2 or div[i2])
                if side1 is not None and side2 is not None:
                    if side1 and side2:
                        dead = True  # pair violated whatever x0 is
                        break
                    continue
                other, x0_coef_div = (
                    (side2, mdiv1) if side1 is None else (side1, mdiv2)
                )
                if other:
                    if x0_coef_div:
                        dead = True  # p divides both members via coefficients
                        break
                    need_unit_x0 = True
            if dead:
                continue
            if s in (rhs_unit if need_unit_x0 else rhs_any):
                return False  # a condition-respecting solution exists
    return True


def obstruct_mod_prime_power(
    form: DiagonalForm, p: int, k_max: int
) -> LocalObstruction | None:
    """Smallest level k <= k_max at which the form is obstructed mod p**k."""
    for k in range(1, k_max + 1):
        if obstruction_at_level(form, p, k):
            return LocalObstruction(p, k, form)
    return None


# ---------------------------------------------------------------------------
# Quartic pair schemes in P^3
# ---------------------------------------------------------------------------

# unit constraint labels
ST_PRIMITIVE = "st-primitive"
U_UNIT = "u-unit"
V_UNIT = "v-unit"


@dataclass(frozen=True)
class QuarticSystem:
    """{F(s,t) = a*u^4, G(s,t) = b*v^4} as a projective scheme in (s,t,u,v).

    F and G are binary quartic forms given by five integer coefficients
    (s^4, s^3 t, s^2 t^2, s t^3, t^4).  unit_constraints restricts which
    residue tuples count as admissible (used when the surrounding gcd
    conditions force a variable to be a p-adic unit).
    """

    f_coeffs: tuple[int, int, int, int, int]
    g_coeffs: tuple[int, int, int, int, int]
    a_coef: int
    b_coef: int
    unit_constraints: frozenset[str] = frozenset()

    def with_constraints(self, *labels: str) -> "QuarticSystem":
        return QuarticSystem(
            self.f_coeffs,
            self.g_coeffs,
            self.a_coef,
            self.b_coef,
            self.unit_constraints | set(labels),
        )

    def describe(self) -> str:
        return (
            f"{_poly_str(self.f_coeffs)} = {self.a_coef}*u^4, "
            f"{_poly_str(self.g_coeffs)} = {self.b_coef}*v^4"
        )


def _poly_str(coeffs) -> str:
    mons = ("s^4", "s^3*t", "s^2*t^2", "s*t^3", "t^4")
    parts = []
    for c, m in zip(coeffs, mons):
        if c == 0:
            continue
        sign = "+" if c > 0 else "-"
        mag = abs(c)
        parts.append(f"{sign} {'' if mag == 1 else str(mag) + '*'}{m}")
    if not parts:
        return "0"
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def eval_quartic(coeffs, s: int, t: int) -> int:
    c40, c31, c22, c13, c04 = coeffs
    return c40 * s**4 + c31 * s**3 * t + c22 * s**2 * t**2 + c13 * s * t**3 + c04 * t**4


def _quartic_partials(coeffs, s: int, t: int) -> tuple[int, int]:
    c40, c31, c22, c13, c04 = coeffs
    ds = 4 * c40 * s**3 + 3 * c31 * s**2 * t + 2 * c22 * s * t**2 + c13 * t**3
    dt = c31 * s**3 + 2 * c22 * s**2 * t + 3 * c13 * s * t**2 + 4 * c04 * t**3
    return ds, dt


def _val(n: int, p: int) -> int:
    if n == 0:
        return 10**9  # effectively infinite
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=512)
def _power_preimages(coef: int, p: int, k: int, exponent: int):
    """Map value -> tuple of x mod p**k with coef*x^exponent = value."""
    mod = p**k
    out: dict[int, list[int]] = {}
    for x in range(mod):
        out.setdefault(coef * pow(x, exponent, mod) % mod, []).append(x)
    return {v: tuple(xs) for v, xs in out.items()}


def _hensel_smooth_point(sys: QuarticSystem, p: int, tup: tuple[int, int, int, int]) -> bool:
    """Newton lifting criterion: residual valuations exceed twice the minimal
    2x2 Jacobian minor valuation at the integer tuple."""
    s, t, u, v = tup
    f1 = eval_quartic(sys.f_coeffs, s, t) - sys.a_coef * u**4
    f2 = eval_quartic(sys.g_coeffs, s, t) - sys.b_coef * v**4
    fs, ft = _quartic_partials(sys.f_coeffs, s, t)
    gs, gt = _quartic_partials(sys.g_coeffs, s, t)
    row1 = (fs, ft, -4 * sys.a_coef * u**3, 0)
    row2 = (gs, gt, 0, -4 * sys.b_coef * v**3)
    min_minor = 10**9
    for i in range(4):
        for j in range(i + 1, 4):
            minor = row1[i] * row2[j] - row1[j] * row2[i]
            min_minor = min(min_minor, _val(minor, p))
    if min_minor >= 10**9:
        return False
    return _val(f1, p) > 2 * min_minor and _val(f2, p) > 2 * min_minor


def _class_survives(
    sys: QuarticSystem,
    p: int,
    mod: int,
    s: int,
    t: int,
    fa_any,
    fa_unit,
    gb_any,
    gb_unit,
) -> bool:
    """Can (s, t) mod p**k be completed to an admissible residue solution?"""
    fval = eval_quartic(sys.f_coeffs, s, t) % mod
    gval = eval_quartic(sys.g_coeffs, s, t) % mod
    u_any = fval in fa_any
    u_unit = fval in fa_unit
    v_any = gval in gb_any
    v_unit = gval in gb_unit
    if U_UNIT in sys.unit_constraints:
        u_any = u_unit
    if V_UNIT in sys.unit_constraints:
        v_any = v_unit
    st_primitive = s % p != 0 or t % p != 0
    if not st_primitive and ST_PRIMITIVE in sys.unit_constraints:
        return False
    if st_primitive:
        return u_any and v_any
    # s, t both divisible by p: tuple primitivity must come from u or v
    return (u_unit and v_any) or (u_any and v_unit)


def scheme_local_solubility(
    sys: QuarticSystem, p: int, depth: int | None = None, trace: list | None = None
) -> LocalVerdict:
    """Sound p-adic verdict for the quartic pair scheme.

    Survivor classes of (s, t) mod p**k are grown level by level; an empty
    level proves insolubility, a Hensel-smooth admissible tuple proves
    solubility, and hitting the depth cap (or the survivor cap) gives Unknown.
    When a list is passed as trace, per-level survivor statistics are
    appended to it.
    """
    if depth is None:
        depth = default_depth(p)
    survivors: list[tuple[int, int]] = []  # filled at level 1
    for k in range(1, depth + 1):
        mod = p**k
        fa_any, fa_unit = _scaled_power_sets(sys.a_coef, p, k, 4)
        gb_any, gb_unit = _scaled_power_sets(sys.b_coef, p, k, 4)

        if k == 1:
            candidates = ((s, t) for s in range(p) for t in range(p))
        else:
            prev = mod // p
            candidates = (
                (s + ds * prev, t + dt * prev)
                for (s, t) in survivors
                for ds in range(p)
                for dt in range(p)
            )
        new_survivors = [
            (s, t)
            for (s, t) in candidates
            if _class_survives(sys, p, mod, s, t, fa_any, fa_unit, gb_any, gb_unit)
        ]
        if trace is not None:
            trace.append(
                {
                    "level": k,
                    "survivors": len(new_survivors),
                    "base_classes": len({(s % p, t % p) for s, t in new_survivors}),
                }
            )
        if not new_survivors:
            return LocalVerdict(Verdict.INSOLUBLE, p, level=k)

        # try to certify solubility from a smooth admissible tuple
        fa_pre = _power_preimages(sys.a_coef, p, min(k, 4), 4)
        gb_pre = _power_preimages(sys.b_coef, p, min(k, 4), 4)
        small_mod = p ** min(k, 4)
        tested = 0
        for s, t in new_survivors:
            fval = eval_quartic(sys.f_coeffs, s, t) % small_mod
            gval = eval_quartic(sys.g_coeffs, s, t) % small_mod
            for u in fa_pre.get(fval, ())[:4]:
                for v in gb_pre.get(gval, ())[:4]:
                    tup = (s, t, u, v)
                    if not _tuple_admissible(sys, p, tup):
                        continue
                    tested += 1
                    if _hensel_smooth_point(sys, p, tup):
                        return LocalVerdict(Verdict.SOLUBLE, p, point=tup)
                    if tested >= HENSEL_TUPLE_CAP:
                        break
                if tested >= HENSEL_TUPLE_CAP:
                    break
            if tested >= HENSEL_TUPLE_CAP:
                break

        if len(new_survivors) > SURVIVOR_CAP:
            return LocalVerdict(Verdict.UNKNOWN, p)
        survivors = new_survivors
    return LocalVerdict(Verdict.UNKNOWN, p)


def _tuple_admissible(sys: QuarticSystem, p: int, tup: tuple[int, int, int, int]) -> bool:
    s, t, u, v = tup
    if all(x % p == 0 for x in tup):
        return False
    if ST_PRIMITIVE in sys.unit_constraints and s % p == 0 and t % p == 0:
        return False
    if U_UNIT in sys.unit_constraints and u % p == 0:
        return False
    if V_UNIT in sys.unit_constraints and v % p == 0:
        return False
    return True


def scheme_insoluble_by_enumeration(sys: QuarticSystem, p: int, k: int) -> bool:
    """Dumb full-tuple check that no admissible solution exists mod p**k.

    Exponential in k; used by tests and the certificate verifier to
    cross-check Insoluble verdicts at small levels.
    """
    mod = p**k
    for s in range(mod):
        for t in range(mod):
            fval = eval_quartic(sys.f_coeffs, s, t) % mod
            gval = eval_quartic(sys.g_coeffs, s, t) % mod
            for u in range(mod):
                if (sys.a_coef * pow(u, 4, mod) - fval) % mod:
                    continue
                for v in range(mod):
                    if (sys.b_coef * pow(v, 4, mod) - gval) % mod:
                        continue
                    if _tuple_admissible(sys, p, (s, t, u, v)):
                        return False
    return True


# ---------------------------------------------------------------------------
# Descent torsors N^2 = d*M^4 + g*e^4
# ---------------------------------------------------------------------------

TORSOR_SURVIVOR_CAP = 4000


def _unit_val(n: int, p: int) -> tuple[int, int]:
    """(valuation, unit part) of n != 0 at p."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _is_qr(u: int, p: int) -> bool:
    return pow(u % p, (p - 1) // 2, p) == 1


def _is_fourth_power_unit(z: int, p: int, j: int) -> bool:
    """Is the unit z a fourth power modulo p**j (p odd)?"""
    mod = p**j
    phi = mod // p * (p - 1)
    return pow(z % mod, phi // math.gcd(4, phi), mod) == 1


def _torsor_soluble_odd(d: int, g: int, p: int) -> bool:
    """Exact Q_p-solubility of N^2 = d M^4 + g e^4 for odd p.

    Valuation analysis: normalizing min(val M, val e) = 0, either one term
    dominates (its valuation must be even with square unit part; always
    arrangeable by sinking the other variable), or the valuations tie, which
    needs alpha = beta (mod 4) and a fourth-power-unit cancellation test.
    """
    alpha, u1 = _unit_val(d, p)
    beta, u2 = _unit_val(g, p)
    # one-term dominance (the other variable deep or zero)
    if alpha % 2 == 0 and _is_qr(u1, p):
        return True
    if beta % 2 == 0 and _is_qr(u2, p):
        return True
    if (alpha - beta) % 4 != 0:
        return False
    # tie case: value p^v * (u1*z + u2) * unit^4 with z a fourth-power unit
    parity = alpha % 2
    if parity == 0:
        fourth_units = {pow(x, 4, p) for x in range(1, p)}
        for z in fourth_units:
            w = (u1 * z + u2) % p
            if w and _is_qr(w, p):
                return True
    j = 1 if parity == 1 else 2
    z0 = (-u2 * pow(u1, -1, p**j)) % p**j
    return _is_fourth_power_unit(z0, p, j)


def torsor_locally_soluble(d: int, g: int, p: int, depth: int | None = None) -> LocalVerdict:
    """p-adic solubility of N^2 = d*M^4 + g*e^4 with (M, e) not both div by p.

    Odd p is decided exactly by valuation analysis; p = 2 runs the survivor
    lifting engine (any Q_p point scales, weights (1, 1, 2), to a tuple with
    min(val M, val e) = 0, so the normalized classes are exhaustive).
    """
    if d == 0 or g == 0:
        raise ValueError("degenerate torsor")
    if p != 2:
        if _torsor_soluble_odd(d, g, p):
            return LocalVerdict(Verdict.SOLUBLE, p)
        return LocalVerdict(Verdict.INSOLUBLE, p, level=0)

    if depth is None:
        depth = default_depth(2) + 6  # 2-adic torsors occasionally need deep levels
    survivors: list[tuple[int, int, int]] = []
    for k in range(1, depth + 1):
        mod = p**k
        if k == 1:
            candidates = (
                (m, e, n)
                for m in range(p)
                for e in range(p)
                if m or e
                for n in range(p)
            )
        else:
            prev = mod // p
            candidates = (
                (m + dm * prev, e + de * prev, n + dn * prev)
                for (m, e, n) in survivors
                for dm in range(p)
                for de in range(p)
                for dn in range(p)
            )
        new_survivors = []
        for m, e, n in candidates:
            if m % p == 0 and e % p == 0:
                continue
            fi = n * n - d * m**4 - g * e**4
            if fi % mod:
                continue
            grad = (-4 * d * m**3, -4 * g * e**3, 2 * n)
            min_grad = min(_val(x, p) for x in grad)
            if _val(fi, p) > 2 * min_grad:
                return LocalVerdict(Verdict.SOLUBLE, p, point=(m, e, n))
            new_survivors.append((m, e, n))
        if not new_survivors:
            return LocalVerdict(Verdict.INSOLUBLE, p, level=k)
        if len(new_survivors) > TORSOR_SURVIVOR_CAP:
            return LocalVerdict(Verdict.UNKNOWN, p)
        survivors = new_survivors
    return LocalVerdict(Verdict.UNKNOWN, p)
