"""Pythagorean-triple descent for octal equations with square c.

When c = k^2, a solution of a^2 u^8 + b^2 v^8 = c w^4 is a Pythagorean
triple (a u^4, b v^4, k w^2), so it comes from the classical parametrization
(2mn, m^2 - n^2, m^2 + n^2) with m > n > 0 coprime of opposite parity.
Splitting the two-monomial equation 2mn = (even side) u^4 into coprime shapes
m = d U^4, n = e V^4 turns the odd-side equation into

    d^2 U^8 - e^2 V^8 = B v^4

with inherited coprimality conditions, which local obstructions then kill.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import is_square, two_monomial_split
from .descent import OctalEquation
from .localsolve import LocalObstruction, obstruct_mod_prime_power, pythag_diagonal_form

# prime-power moduli scanned for obstructions, covering everything the
# derived equations of the n <= 10000 range need (largest is 193)
DEFAULT_PYTHAG_PRIMES = tuple(
    p for p in range(2, 230) if all(p % q for q in range(2, p))
)


@dataclass(frozen=True)
class PythagSystem:
    """One branch 2mn = A u^4, m^2 - n^2 = B v^4, m^2 + n^2 = k w^2."""

    equation: OctalEquation
    branch: str  # "opposite-parity" or "both-odd-a" / "both-odd-b"
    k_root: int
    even_side: int  # coefficient A on the 2mn side
    odd_side: int  # coefficient B on the m^2 - n^2 side
    even_var: str  # which original variable (u or v) sits on the 2mn side

    def describe(self) -> str:
        ev = self.even_var
        ov = "v" if ev == "u" else "u"
        return (
            f"2mn = {self.even_side}{ev}^4, "
            f"m^2 - n^2 = {self.odd_side}{ov}^4, "
            f"m^2 + n^2 = {self.k_root}w^2"
        )


@dataclass(frozen=True)
class DerivedOctal:
    """d^2 U^8 - e^2 V^8 = B v^4 with gcd(dU, eV) = gcd(dU, Bv) = gcd(eV, Bv) = 1."""

    d: int
    e: int
    B: int
    system: PythagSystem

    def form(self):
        return pythag_diagonal_form(self.d, self.e, self.B)

    def describe(self) -> str:
        return f"{self.d**2}*U^8 - {self.e**2}*V^8 = {self.B}*v^4"


def pythag_systems(eq: OctalEquation) -> list[PythagSystem]:
    """The parametrized systems for an octal equation, empty if c is not square.

    a and b are of opposite parity or both odd (an even w would force even
    u, v).  Opposite parity puts the even coefficient on the 2mn side; both
    odd requires trying each side there.
    """
    k = is_square(eq.c)
    if k is None:
        return []
    a, b = eq.a, eq.b
    if a % 2 == 0 or b % 2 == 0:
        if b % 2 == 0:  # label so the 2mn side is even
            even, odd, even_var = b, a, "v"
        else:
            even, odd, even_var = a, b, "u"
        return [PythagSystem(eq, "opposite-parity", k, even, odd, even_var)]
    return [
        PythagSystem(eq, "both-odd-a", k, a, b, "u"),
        PythagSystem(eq, "both-odd-b", k, b, a, "v"),
    ]


def pythag_descend(sys: PythagSystem) -> list[DerivedOctal]:
    """All derived equations d^2 U^8 - e^2 V^8 = B v^4 for one system."""
    return [
        DerivedOctal(d, e, sys.odd_side, sys)
        for d, e in two_monomial_split(sys.even_side)
    ]


@dataclass(frozen=True)
class PythagStep:
    """Certificate entry: every derived equation of every branch is locally
    obstructed at some prime power."""

    equation: OctalEquation
    rows: tuple  # ((branch, d, e, B, p, k), ...)


def pythag_eliminate(
    eq: OctalEquation,
    primes: tuple[int, ...] = DEFAULT_PYTHAG_PRIMES,
    k_max_p2: int = 4,
    k_max_odd: int = 2,
) -> PythagStep | None:
    """Eliminate an octal equation through the Pythagorean descent.

    Succeeds only if every derived equation of every branch has a local
    obstruction within the scanned prime powers.
    """
    systems = pythag_systems(eq)
    if not systems:
        return None
    rows = []
    for sys in systems:
        for derived in pythag_descend(sys):
            obstruction = obstruct_derived(derived, primes, k_max_p2, k_max_odd)
            if obstruction is None:
                return None
            rows.append(
                (sys.branch, derived.d, derived.e, derived.B, obstruction.p, obstruction.k)
            )
    return PythagStep(eq, tuple(rows))


def obstruct_derived(
    derived: DerivedOctal,
    primes: tuple[int, ...] = DEFAULT_PYTHAG_PRIMES,
    k_max_p2: int = 4,
    k_max_odd: int = 2,
) -> LocalObstruction | None:
    """First local obstruction of a derived equation over the prime scan list."""
    form = derived.form()
    for p in primes:
        k_max = k_max_p2 if p == 2 else k_max_odd
        obstruction = obstruct_mod_prime_power(form, p, k_max)
        if obstruction is not None:
            return obstruction
    return None
