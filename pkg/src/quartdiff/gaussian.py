"""Z[i] factorization method for octal equations.

Writing a^2 u^8 + b^2 v^8 = c w^4 as (a u^4 + b v^4 i)(a u^4 - b v^4 i),
unique factorization in Z[i] forces a u^4 + b v^4 i = i^eps * alpha * (s+ti)^4
for one of finitely many alpha built from Gaussian primes over 2c.  Equating
real and imaginary parts gives a pair of binary quartics

    F(s, t) = a u^4,   G(s, t) = b v^4

and each (alpha, eps) case dies either by a classical difference-of-fourth-
powers argument or by p-adic insolubility of the quartic pair scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import (
    factorize,
    fourth_power_free_part,
    is_square,
    rational_kth_root,
    sqrt_minus_one_mod_p,
)
from .descent import OctalEquation
from .localsolve import (
    ST_PRIMITIVE,
    U_UNIT,
    V_UNIT,
    QuarticSystem,
    Verdict,
    scheme_local_solubility,
)

DEFAULT_GAUSSIAN_PRIMES = (2, 3, 5, 7, 11, 13, 17)


@dataclass(frozen=True)
class GaussInt:
    """Gaussian integer re + im*i with exact arithmetic."""

    re: int
    im: int

    def __add__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __pow__(self, k: int) -> "GaussInt":
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"{self.re}{sign}{'' if mag == 1 else mag}i"


ONE = GaussInt(1, 0)
I_UNIT = GaussInt(0, 1)
UNITS = (ONE, I_UNIT, GaussInt(-1, 0), GaussInt(0, -1))


def gauss_divmod(a: GaussInt, b: GaussInt) -> tuple[GaussInt, GaussInt]:
    """Rounded division: a = q*b + r with N(r) <= N(b)/2."""
    nb = b.norm()
    num = a * b.conj()
    q = GaussInt(_round_div(num.re, nb), _round_div(num.im, nb))
    return q, a - q * b


def _round_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    return q + 1 if 2 * r >= b else q


def gauss_gcd(a: GaussInt, b: GaussInt) -> GaussInt:
    while b.norm():
        _, r = gauss_divmod(a, b)
        a, b = b, r
    return a


def normalize_associate(z: GaussInt) -> tuple[GaussInt, int]:
    """(canonical associate, j) with z = i^j * canonical.

    Canonical: re > 0 and re >= |im|, with im >= 0 on the diagonal re = |im|.
    """
    if z.norm() == 0:
        return z, 0
    best = None
    for j in range(4):
        cand = z * UNITS[(4 - j) % 4]  # i^{-j} * z
        if cand.re > 0 and (
            cand.re > abs(cand.im) or (cand.re == cand.im)
        ):
            best = (cand, j)
            break
    assert best is not None
    return best


def gauss_factor(n: int):
    """Factor n >= 1 in Z[i]: (unit, [(prime, exponent), ...]).

    2 ramifies as -i (1+i)^2; p = 1 (mod 4) splits via gcd(p, x+i) with
    x^2 = -1 (mod p); p = 3 (mod 4) stays inert.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out: list[tuple[GaussInt, int]] = []
    for p, e in factorize(n):
        if p == 2:
            out.append((GaussInt(1, 1), 2 * e))
        elif p % 4 == 1:
            x = sqrt_minus_one_mod_p(p)
            pi = gauss_gcd(GaussInt(p, 0), GaussInt(x, 1))
            pi, _ = normalize_associate(pi)
            if pi.im < 0:
                pi = pi.conj()
            out.append((pi, e))
            out.append((pi.conj(), e))
        else:
            out.append((GaussInt(p, 0), e))
    prod = ONE
    for pi, e in out:
        prod = prod * pi**e
    unit = _unit_quotient(GaussInt(n, 0), prod)
    return unit, out


def _unit_quotient(target: GaussInt, prod: GaussInt) -> GaussInt:
    for u in UNITS:
        if u * prod == target:
            return u
    raise ArithmeticError("recomposition failed")


@dataclass(frozen=True)
class AlphaCase:
    """A factor alpha (unit-normalized, fourth-power-free, primitive) and the
    unit exponent eps in a u^4 + b v^4 i = i^eps alpha (s+ti)^4."""

    alpha: GaussInt
    epsilon: int

    def describe(self) -> str:
        return f"i^{self.epsilon} * ({self.alpha})"


def enumerate_alpha(eq: OctalEquation) -> list[AlphaCase]:
    """A sound, finite superset of the alpha cases for an octal equation.

    alpha runs over unit-normalized products of Gaussian primes above primes
    dividing 2c such that no rational prime divides alpha, the exponent of
    (1+i) is at most 1, and the fourth-power-free part of N(alpha) equals
    that of c; every such alpha is crossed with eps in {0, 1, 2, 3}.  An
    empty list means no admissible alpha exists (the equation was already
    locally impossible; callers must not treat this as an elimination).
    """
    c = eq.c
    options: list[list[GaussInt]] = []
    for p, e in factorize(c):
        if p == 2:
            e_mod = e % 4
            if e_mod == 0:
                continue
            if e_mod != 1:
                return []
            options.append([GaussInt(1, 1)])
        elif p % 4 == 1:
            e_mod = e % 4
            if e_mod == 0:
                continue
            x = sqrt_minus_one_mod_p(p)
            pi = gauss_gcd(GaussInt(p, 0), GaussInt(x, 1))
            pi, _ = normalize_associate(pi)
            if pi.im < 0:
                pi = pi.conj()
            options.append([pi**e_mod, pi.conj() ** e_mod])
        else:
            if e % 4 != 0:
                return []  # inert prime cannot appear in a primitive alpha
    alphas = [ONE]
    for opts in options:
        alphas = [a * o for a in alphas for o in opts]
    seen = set()
    cases = []
    for alpha in alphas:
        norm_alpha, _ = normalize_associate(alpha)
        key = (norm_alpha.re, norm_alpha.im)
        if key in seen:
            continue
        seen.add(key)
        assert fourth_power_free_part(norm_alpha.norm()) == fourth_power_free_part(c)
        for eps in range(4):
            cases.append(AlphaCase(norm_alpha, eps))
    return cases


# Re((s+ti)^4) and Im((s+ti)^4) as binary quartic coefficient vectors
_RE4 = (1, 0, -6, 0, 1)
_IM4 = (0, 4, 0, -4, 0)


def expand_case(case: AlphaCase, a: int, b: int) -> QuarticSystem:
    """The quartic pair {F = a u^4, G = b v^4} with F + Gi = i^eps alpha (s+ti)^4."""
    x, y = case.alpha.re, case.alpha.im
    f = tuple(x * r - y * j for r, j in zip(_RE4, _IM4))
    g = tuple(y * r + x * j for r, j in zip(_RE4, _IM4))
    for _ in range(case.epsilon % 4):
        f, g = tuple(-cg for cg in g), f
    return QuarticSystem(f, g, a, b)


@dataclass(frozen=True)
class CaseElimination:
    case: AlphaCase
    system: QuarticSystem
    mechanism: str  # "classical-form" | "scheme" | "scheme-constrained"
    p: int | None = None
    level: int | None = None
    constraints: tuple[str, ...] = ()


def classical_form_filter(sys: QuarticSystem) -> CaseElimination | None:
    """Eliminate a case through X^4 - 6 X^2 Y^2 + Y^4 = Z^2.

    That form only vanishes to a square at st = 0 (and its negative only at
    s = t = 0); substituting into the partner equation must then force one of
    the always-nonzero variables u, v to vanish.
    """
    for which, coeffs, coef, partner, partner_coef in (
        ("F", sys.f_coeffs, sys.a_coef, sys.g_coeffs, sys.b_coef),
        ("G", sys.g_coeffs, sys.b_coef, sys.f_coeffs, sys.a_coef),
    ):
        for sign in (1, -1):
            if tuple(sign * c for c in coeffs) != _RE4:
                continue
            if sign == 1:
                if is_square(coef) is None:
                    continue
                # st = 0; each branch must force u = 0 or v = 0 (or collapse
                # to the all-zero tuple)
                if _branch_allows_nonzero(partner[0], partner_coef) or _branch_allows_nonzero(
                    partner[4], partner_coef
                ):
                    continue
                return CaseElimination(None, sys, "classical-form")
            # -Q(s,t) = coef * x^4 forces s = t = x = 0, then the partner
            # forces the remaining variable to 0: nothing projective remains
            if coef == 1:
                return CaseElimination(None, sys, "classical-form")
    return None


def _branch_allows_nonzero(lead_coef: int, rhs_coef: int) -> bool:
    """Can lead * s^4 = rhs * y^4 hold with s, y both nonzero rationals?"""
    if lead_coef == 0 or lead_coef * rhs_coef < 0:
        return False
    return rational_kth_root(lead_coef, rhs_coef, 4) is not None


@dataclass(frozen=True)
class GaussianStep:
    """Certificate entry: every alpha case of the equation is eliminated."""

    equation: OctalEquation
    cases: tuple[CaseElimination, ...]


def unit_constraints_for(eq: OctalEquation, p: int) -> tuple[str, ...]:
    """Constraints at p implied by gcd(au, bv) = gcd(au, cw) = gcd(bv, cw) = 1.

    p | b or p | c forces u to be a unit; p | a or p | c forces v; and s, t
    cannot both be divisible by p (that would force p | u and p | v)."""
    cons = [ST_PRIMITIVE]
    if eq.b % p == 0 or eq.c % p == 0:
        cons.append(U_UNIT)
    if eq.a % p == 0 or eq.c % p == 0:
        cons.append(V_UNIT)
    return tuple(cons)


def eliminate_case(
    eq: OctalEquation,
    case: AlphaCase,
    primes=DEFAULT_GAUSSIAN_PRIMES,
    depth: int | None = None,
) -> CaseElimination | None:
    """classical filter, then bare scheme checks, then constrained retries."""
    sys = expand_case(case, eq.a, eq.b)
    hit = classical_form_filter(sys)
    if hit is not None:
        return CaseElimination(case, sys, hit.mechanism)
    for p in primes:
        verdict = scheme_local_solubility(sys, p, depth)
        if verdict.verdict is Verdict.INSOLUBLE:
            return CaseElimination(case, sys, "scheme", p, verdict.level)
    for p in primes:
        cons = unit_constraints_for(eq, p)
        constrained = sys.with_constraints(*cons)
        verdict = scheme_local_solubility(constrained, p, depth)
        if verdict.verdict is Verdict.INSOLUBLE:
            return CaseElimination(case, constrained, "scheme-constrained", p, verdict.level, cons)
    return None


def decide_gaussian(
    eq: OctalEquation,
    primes=DEFAULT_GAUSSIAN_PRIMES,
    depth: int | None = None,
    cases: list[AlphaCase] | None = None,
) -> GaussianStep | None:
    """Certificate when every alpha case is eliminated; None otherwise."""
    if cases is None:
        cases = enumerate_alpha(eq)
    if not cases:
        return None
    eliminations = []
    for case in cases:
        hit = eliminate_case(eq, case, primes, depth)
        if hit is None:
            return None
        eliminations.append(hit)
    return GaussianStep(eq, tuple(eliminations))
