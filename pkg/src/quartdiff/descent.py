"""Reduction of x**4 - y**4 = n*z**4 to the family a^2 u^8 + b^2 v^8 = c w^4.

For fourth-power-free n, any primitive solution has x, y, z pairwise coprime.
Writing t, s for the (half-)sum and difference of x and y gives
s*t*(s^2 + t^2) = n' r^4 with n' = n/8 (x, y both odd, 8 | n) or n' = 2n.
Coprimality forces s = a u^4, t = b v^4, s^2 + t^2 = c w^4 for some pairwise
coprime triple a*b*c = n', yielding the target equation together with the
side conditions gcd(au, bv) = gcd(au, cw) = gcd(bv, cw) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import factorize, is_fourth_power, is_square

PARITY_BRANCHES = ("both-odd-8|n", "both-odd-z-even", "opposite-parity")


@dataclass(frozen=True)
class ReductionStep:
    """Record of the substitution taking (x, y, z) to (s, t, r).

    parity_branch "both-odd-8|n":   t=(x+y)/2, s=(x-y)/2, r=z,   n'=n/8
    parity_branch "both-odd-z-even": t=(x+y)/2, s=(x-y)/2, r=z/2, n'=2n
    parity_branch "opposite-parity": t=x+y,     s=x-y,     r=z,   n'=2n
    """

    parity_branch: str
    n: int
    n_prime: int

    def substitute(self, x: int, y: int, z: int) -> tuple[int, int, int] | None:
        """Map a solution of x^4 - y^4 = n z^4 to (s, t, r), or None if the
        parities do not match this branch."""
        both_odd = x % 2 == 1 and y % 2 == 1
        if self.parity_branch == "both-odd-8|n":
            if not both_odd:
                return None
            return ((x - y) // 2, (x + y) // 2, z)
        if self.parity_branch == "both-odd-z-even":
            if not both_odd or z % 2:
                return None
            return ((x - y) // 2, (x + y) // 2, z // 2)
        if both_odd:
            return None
        return (x - y, x + y, z)


@dataclass(frozen=True)
class OctalEquation:
    """The equation a^2 u^8 + b^2 v^8 = c w^4 with pairwise coprime a, b, c.

    Side conditions: gcd(a*u, b*v) = gcd(a*u, c*w) = gcd(b*v, c*w) = 1.
    Instances also remember which n and reduction branch produced them.
    """

    a: int
    b: int
    c: int
    n_prime: int
    origin_n: int
    branch: str  # "2n" or "n/8"

    def __post_init__(self):
        assert self.a * self.b * self.c == self.n_prime
        assert math.gcd(self.a, self.b) == 1
        assert math.gcd(self.a, self.c) == 1
        assert math.gcd(self.b, self.c) == 1

    def key(self) -> tuple[frozenset, int, int]:
        """Identity of the triple up to the (a,u) <-> (b,v) symmetry."""
        return (frozenset((self.a, self.b)), self.c, self.n_prime)

    def reduction_steps(self) -> list[ReductionStep]:
        """The parity branches of the reduction feeding this n'."""
        if self.branch == "n/8":
            return [ReductionStep("both-odd-8|n", self.origin_n, self.n_prime)]
        return [
            ReductionStep("opposite-parity", self.origin_n, self.n_prime),
            ReductionStep("both-odd-z-even", self.origin_n, self.n_prime),
        ]

    def holds(self, u: int, v: int, w: int) -> bool:
        return self.a**2 * u**8 + self.b**2 * v**8 == self.c * w**4

    def conditions_hold(self, u: int, v: int, w: int) -> bool:
        au, bv, cw = self.a * u, self.b * v, self.c * w
        return (
            math.gcd(au, bv) == 1
            and math.gcd(au, cw) == 1
            and math.gcd(bv, cw) == 1
        )

    def __str__(self):
        return f"{self.a**2}*u^8 + {self.b**2}*v^8 = {self.c}*w^4"


def coprime_ordered_triples(m: int) -> list[tuple[int, int, int]]:
    """All ordered pairwise-coprime (a, b, c) with a*b*c = m."""
    prime_powers = [p**e for p, e in factorize(m)]
    triples = [(1, 1, 1)]
    for q in prime_powers:
        triples = [
            t
            for (a, b, c) in triples
            for t in ((a * q, b, c), (a, b * q, c), (a, b, c * q))
        ]
    return sorted(triples)


def reduce_to_triples(n: int) -> list[OctalEquation]:
    """All octal equations for fourth-power-free n, one per {a,b}-class.

    n' = 2n always contributes; n' = n/8 contributes additionally when 8 | n.
    Triples differing only by swapping (a, u) with (b, v) are deduplicated,
    keeping the lexicographically first representative.
    """
    if n < 1:
        raise ValueError("n must be positive")
    sources = [(2 * n, "2n")]
    if n % 8 == 0:
        sources.append((n // 8, "n/8"))
    out: list[OctalEquation] = []
    seen: set[tuple] = set()
    for n_prime, branch in sources:
        for a, b, c in coprime_ordered_triples(n_prime):
            if a < b:
                a, b = b, a  # canonical class representative: a >= b
            eq = OctalEquation(a, b, c, n_prime, n, branch)
            if eq.key() in seen:
                continue
            seen.add(eq.key())
            out.append(eq)
    return out


@dataclass(frozen=True)
class MordellStep:
    """Elimination of a triple through the equation X^4 - Y^4 = Z^2.

    When c = kappa^4 and a or b is a perfect square beta^2, any solution of
    a^2 u^8 + b^2 v^8 = c w^4 rearranges to a difference of fourth powers
    equal to a square, which classically forces u*v*w = 0, contradicting the
    side conditions.
    """

    equation: OctalEquation
    kappa: int
    square_side: str  # "a" or "b"
    beta: int

    def describe(self) -> str:
        return (
            f"c = {self.kappa}^4 and {self.square_side} = {self.beta}^2: "
            f"solutions embed in X^4 - Y^4 = Z^2, so uvw = 0"
        )


def mordell_filter(eq: OctalEquation) -> MordellStep | None:
    """Detect triples reducible to X^4 - Y^4 = Z^2 (only trivial solutions).

    With c = kappa^4 and b = beta^2 the equation becomes
    (kappa*w)^4 - (beta*v^2)^4 = (a*u^4)^2, and symmetrically for a = beta^2.
    """
    kappa = is_fourth_power(eq.c)
    if kappa is None:
        return None
    beta = is_square(eq.b)
    if beta is not None:
        return MordellStep(eq, kappa, "b", beta)
    beta = is_square(eq.a)
    if beta is not None:
        return MordellStep(eq, kappa, "a", beta)
    return None
