"""Exact integer arithmetic: primality, factorization, power residues, coprime splits.

Everything here is pure and exact (Python big integers, no floats).  Inputs in
this project stay far below 10**12, so trial division backed by a
deterministic Miller-Rabin check is all the factoring power we need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

# Witnesses giving a deterministic Miller-Rabin test for all n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as a sorted tuple of (prime, exponent)."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    factors: list[tuple[int, int]] = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    q = 5
    while q * q <= n:
        if is_prime(n):
            break
        for p in (q, q + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                factors.append((p, e))
        q += 6
    if n > 1:
        factors.append((n, 1))
    return tuple(sorted(factors))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def squarefree_divisors(n: int) -> list[int]:
    """All positive squarefree divisors of n, sorted."""
    divs = [1]
    for p, _ in factorize(n):
        divs += [d * p for d in divs]
    return sorted(divs)


def squarefree_part(n: int) -> int:
    """The squarefree kernel of n != 0 (sign preserved)."""
    if n == 0:
        raise ValueError("squarefree_part of 0")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorize(abs(n)):
        if e % 2:
            out *= p
    return sign * out


def fourth_power_free_part(n: int) -> int:
    """n with every p**4 factor removed (n >= 1)."""
    out = 1
    for p, e in factorize(n):
        out *= p ** (e % 4)
    return out


@dataclass(frozen=True)
class PowerFreeDecomp:
    """Decomposition n = k**4 * n_prime with n_prime fourth-power-free."""

    k: int
    n_prime: int

    @property
    def n(self) -> int:
        return self.k**4 * self.n_prime


def fourth_power_free(n: int) -> PowerFreeDecomp:
    """Split n >= 1 as k**4 * n' with n' free of fourth-power factors."""
    if n < 1:
        raise ValueError("n must be positive")
    k = 1
    n_prime = 1
    for p, e in factorize(n):
        k *= p ** (e // 4)
        n_prime *= p ** (e % 4)
    return PowerFreeDecomp(k, n_prime)


def coprime_split(n: int) -> list[tuple[int, int]]:
    """All ordered pairs (d, e) with d*e = n and gcd(d, e) = 1.

    Every prime power of n goes wholly to one side, so there are 2**omega(n)
    pairs.  Sorted by d.
    """
    if n < 1:
        raise ValueError("n must be positive")
    prime_powers = [p**e for p, e in factorize(n)]
    pairs = [(1, n)]
    for q in prime_powers:
        pairs += [(d * q, e // q) for d, e in pairs]
    return sorted(set(pairs))


def two_monomial_split(a: int) -> list[tuple[int, int]]:
    """Coprime shapes (d, e) of the solutions of 2*m*n = a*u**4.

    Every solution in coprime m, n has m = d*U**4, n = e*V**4 for one of the
    returned pairs and coprime U, V.  When a is even the factor 2 cancels and
    d*e = a/2; when a is odd, u is forced even and d*e = 8*a.
    """
    if a < 1:
        raise ValueError("a must be positive")
    if a % 2 == 0:
        return coprime_split(a // 2)
    return coprime_split(8 * a)


def is_kth_power(n: int, k: int) -> int | None:
    """Return r >= 0 with r**k = n when it exists (n >= 0, k in {2, 4, 8})."""
    if k < 2 or k & (k - 1):
        raise ValueError("only power-of-two exponents supported")
    if n < 0:
        return None
    if n in (0, 1):
        return n
    # iterated isqrt computes floor(n**(1/k)) exactly for k a power of two
    r = n
    for _ in range(k.bit_length() - 1):
        r = math.isqrt(r)
    return r if r**k == n else None


def is_square(n: int) -> int | None:
    """Return r >= 0 with r*r = n, else None."""
    return is_kth_power(n, 2)


def is_fourth_power(n: int) -> int | None:
    """Return r >= 0 with r**4 = n, else None."""
    return is_kth_power(n, 4)


def rational_square_root(num: int, den: int) -> tuple[int, int] | None:
    """Nonnegative square root of num/den as a fraction, or None.

    den must be nonzero; the sign of the fraction is num*den's sign.
    """
    if den == 0:
        raise ZeroDivisionError("denominator is zero")
    if num == 0:
        return (0, 1)
    if num * den < 0:
        return None
    g = math.gcd(abs(num), abs(den))
    num, den = abs(num) // g, abs(den) // g
    rn = is_square(num)
    rd = is_square(den)
    if rn is None or rd is None:
        return None
    return (rn, rd)


def rational_kth_root(num: int, den: int, k: int) -> tuple[int, int] | None:
    """Nonnegative k-th root of num/den in lowest terms, or None."""
    if den == 0:
        raise ZeroDivisionError("denominator is zero")
    if num == 0:
        return (0, 1)
    if num * den < 0:
        return None
    g = math.gcd(abs(num), abs(den))
    num, den = abs(num) // g, abs(den) // g
    rn = is_kth_power(num, k)
    rd = is_kth_power(den, k)
    if rn is None or rd is None:
        return None
    return (rn, rd)


class ResidueTable:
    """The set of e-th power residues modulo a prime power p**k.

    Attributes:
        modulus: p**k
        exponent: e (2, 4 or 8 in this project)
        members: frozenset of all x**e mod p**k
        unit_members: the subset attained by x coprime to p
    """

    def __init__(self, p: int, k: int, exponent: int):
        self.p = p
        self.k = k
        self.modulus = p**k
        self.exponent = exponent
        members = set()
        unit_members = set()
        for x in range(self.modulus):
            r = pow(x, exponent, self.modulus)
            members.add(r)
            if x % p:
                unit_members.add(r)
        self.members = frozenset(members)
        self.unit_members = frozenset(unit_members)

    def __contains__(self, value: int) -> bool:
        return value % self.modulus in self.members

    def contains_unit_power(self, value: int) -> bool:
        return value % self.modulus in self.unit_members


@lru_cache(maxsize=4096)
def residue_table(p: int, k: int, exponent: int) -> ResidueTable:
    """Cached ResidueTable constructor."""
    return ResidueTable(p, k, exponent)


def sqrt_minus_one_mod_p(p: int) -> int:
    """A square root of -1 modulo a prime p = 1 (mod 4)."""
    if p % 4 != 1:
        raise ValueError("need p = 1 mod 4")
    for g in range(2, p):
        x = pow(g, (p - 1) // 4, p)
        if x * x % p == p - 1:
            return x
    raise ArithmeticError(f"no sqrt(-1) found mod {p}")  # unreachable for prime p
