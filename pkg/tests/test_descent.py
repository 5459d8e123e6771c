import math

import pytest

from quartdiff.arith import fourth_power_free, is_kth_power
from quartdiff.descent import (
    OctalEquation,
    coprime_ordered_triples,
    mordell_filter,
    reduce_to_triples,
)


def classes(eqs):
    return {(frozenset((e.a, e.b)), e.c) for e in eqs}


def test_reduce_31_matches_known_list():
    eqs = reduce_to_triples(31)
    assert len(eqs) == 5
    assert classes(eqs) == {
        (frozenset({1}), 62),
        (frozenset({2, 1}), 31),
        (frozenset({31, 1}), 2),
        (frozenset({62, 1}), 1),
        (frozenset({2, 31}), 1),
    }
    for eq in eqs:
        assert eq.n_prime == 62 and eq.branch == "2n"


def test_reduce_2():
    eqs = reduce_to_triples(2)
    assert classes(eqs) == {(frozenset({1}), 4), (frozenset({4, 1}), 1)}


def test_reduce_8_has_both_sources():
    eqs = reduce_to_triples(8)
    n_primes = {eq.n_prime for eq in eqs}
    assert n_primes == {16, 1}


def test_triples_definitional():
    for n in (5, 30, 31, 40):
        for eq in reduce_to_triples(n):
            assert eq.a * eq.b * eq.c == eq.n_prime
            assert math.gcd(eq.a, eq.b) == 1
            assert math.gcd(eq.a, eq.c) == 1
            assert math.gcd(eq.b, eq.c) == 1


def test_triple_count_formula():
    """One class per unordered-{a,b} coprime factorization."""
    for n_prime in range(1, 1001):
        triples = coprime_ordered_triples(n_prime)
        omega = len(
            [p for p in range(2, n_prime + 1) if n_prime % p == 0 and _is_prime(p)]
        )
        assert len(triples) == 3**omega
        unordered = {(frozenset((a, b)), c) for a, b, c in triples}
        # ordered triples with a != b pair up, a == b only when a == b == 1
        paired = sum(1 for a, b, c in triples if a != b)
        assert len(unordered) == paired // 2 + (len(triples) - paired)


def _is_prime(p):
    return p > 1 and all(p % q for q in range(2, int(p**0.5) + 1))


def test_mordell_filter():
    eqs = {(e.a, e.b): e for e in reduce_to_triples(31)}
    step = mordell_filter(eqs[(62, 1)])
    assert step is not None and step.kappa == 1 and step.beta == 1
    assert mordell_filter(eqs[(31, 2)]) is None  # neither 31 nor 2 is a square
    assert mordell_filter(eqs[(31, 1)]) is None  # c = 2 is not a fourth power
    # constructed pairwise-coprime instance with c = 2^4 and b = 5^2
    eq = OctalEquation(3, 25, 16, 1200, 600, "2n")
    step = mordell_filter(eq)
    assert step is not None and step.kappa == 2 and step.square_side == "b" and step.beta == 5


def brute_solutions(n, bound):
    """Pairwise-coprime positive solutions of x^4 - y^4 = n z^4 up to bound."""
    out = []
    for x in range(1, bound + 1):
        for y in range(1, x):
            lhs = x**4 - y**4
            for z in range(1, bound + 1):
                if n * z**4 == lhs:
                    if math.gcd(x, y) == math.gcd(x, z) == math.gcd(y, z) == 1:
                        out.append((x, y, z))
                elif n * z**4 > lhs:
                    break
    return out


def test_reduction_completeness_brute_force():
    """Every small solution maps onto some emitted octal equation with the
    side conditions satisfied."""
    for n in range(1, 41):
        if fourth_power_free(n).k != 1:
            continue
        eqs = reduce_to_triples(n)
        for x, y, z in brute_solutions(n, 50):
            assert _maps_to_some_triple(n, x, y, z, eqs), (n, x, y, z)


def _maps_to_some_triple(n, x, y, z, eqs):
    for eq in eqs:
        for step in eq.reduction_steps():
            sub = step.substitute(x, y, z)
            if sub is None:
                continue
            s, t, r = sub
            if s * t * (s * s + t * t) != eq.n_prime * r**4:
                continue
            trip = _extract(s, t, eq.n_prime)
            if trip is None:
                continue
            (a, u), (b, v), (c, w) = trip
            if {a, b} != {eq.a, eq.b} or c != eq.c:
                continue
            if (a, b) != (eq.a, eq.b):
                a, b, u, v = b, a, v, u
            cand = OctalEquation(a, b, c, eq.n_prime, n, eq.branch)
            if cand.holds(u, v, w) and cand.conditions_hold(u, v, w):
                return True
    return False


def _extract(s, t, n_prime):
    """Split s = a u^4, t = b v^4, s^2 + t^2 = c w^4 along primes of n'."""
    def part(value):
        coef = 1
        for p in range(2, n_prime + 1):
            if n_prime % p:
                continue
            while value % p == 0:
                value //= p
                coef *= p
        return coef, value

    a, s_rest = part(s)
    b, t_rest = part(t)
    c, q_rest = part(s * s + t * t)
    u = is_kth_power(s_rest, 4)
    v = is_kth_power(t_rest, 4)
    w = is_kth_power(q_rest, 4)
    if None in (u, v, w):
        return None
    return (a, u), (b, v), (c, w)


def test_octal_equation_rejects_non_coprime():
    with pytest.raises(AssertionError):
        OctalEquation(3, 4, 16, 192, 96, "2n")
