import math
import random

import pytest

from quartdiff.arith import (
    PowerFreeDecomp,
    coprime_split,
    factorize,
    fourth_power_free,
    is_kth_power,
    is_prime,
    rational_kth_root,
    rational_square_root,
    residue_table,
    squarefree_divisors,
    two_monomial_split,
)


def test_is_prime_small():
    primes = [p for p in range(60) if is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert is_prime(2**31 - 1)
    assert not is_prime(2**32 + 1)


def test_factorize_roundtrip():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(1, 10**7)
        fac = factorize(n)
        prod = 1
        for p, e in fac:
            assert is_prime(p)
            prod *= p**e
        assert prod == n


def test_fourth_power_free_examples():
    assert fourth_power_free(80) == PowerFreeDecomp(2, 5)
    assert fourth_power_free(81) == PowerFreeDecomp(3, 1)
    # trial division gives 8575 = 5^2 * 7^3, no fourth-power factor
    assert fourth_power_free(8575) == PowerFreeDecomp(1, 8575)


def test_fourth_power_free_invariants():
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randrange(1, 10**8)
        d = fourth_power_free(n)
        assert d.k**4 * d.n_prime == n
        again = fourth_power_free(d.n_prime)
        assert again == PowerFreeDecomp(1, d.n_prime)


def test_coprime_split_examples():
    assert set(coprime_split(62)) == {(1, 62), (2, 31), (31, 2), (62, 1)}
    assert set(coprime_split(30)) == {
        (1, 30), (2, 15), (3, 10), (5, 6), (6, 5), (10, 3), (15, 2), (30, 1),
    }
    assert coprime_split(1) == [(1, 1)]


def test_coprime_split_is_complete_and_coprime():
    for n in range(1, 400):
        pairs = coprime_split(n)
        assert len(pairs) == 2 ** len(factorize(n))
        for d, e in pairs:
            assert d * e == n and math.gcd(d, e) == 1


def test_two_monomial_split_examples():
    assert set(two_monomial_split(6)) == {(1, 3), (3, 1)}
    assert set(two_monomial_split(71)) == {(1, 568), (8, 71), (71, 8), (568, 1)}
    assert two_monomial_split(2) == [(1, 1)]


def test_two_monomial_split_completeness_brute_force():
    """Every coprime solution of 2mn = A u^4 matches some (d, e) shape."""
    bound = 200
    for A in range(1, 31):
        shapes = two_monomial_split(A)
        for u in range(1, bound + 1):
            value = A * u**4
            if value % 2:
                continue
            half = value // 2
            for m in range(1, bound + 1):
                if half % m:
                    continue
                n = half // m
                if n > bound or math.gcd(m, n) != 1:
                    continue
                assert any(
                    _matches_shape(m, n, d, e) for d, e in shapes
                ), (A, m, n, u)


def _matches_shape(m, n, d, e):
    if m % d or n % e:
        return False
    U = is_kth_power(m // d, 4)
    V = is_kth_power(n // e, 4)
    return U is not None and V is not None


def test_is_kth_power_examples():
    assert is_kth_power(16, 4) == 2
    assert is_kth_power(87025, 2) == 295
    assert is_kth_power(62, 2) is None
    assert is_kth_power(0, 2) == 0
    rng = random.Random(3)
    for _ in range(1000):
        r = rng.randrange(0, 10**6)
        k = rng.choice((2, 4, 8))
        assert is_kth_power(r**k, k) == r
        assert is_kth_power(r**k + 1, k) in (None, 1)


def test_residue_table():
    t16 = residue_table(2, 4, 8)
    assert len(t16.members) <= 16
    # odd x: x^8 = 1 (mod 16)
    assert t16.unit_members == frozenset({1})
    for p, k, e in ((3, 2, 4), (5, 1, 2), (7, 2, 8), (13, 1, 4)):
        t = residue_table(p, k, e)
        mod = p**k
        assert t.members == frozenset(pow(x, e, mod) for x in range(mod))
        assert len(t.members) <= mod


def test_squarefree_divisors():
    assert squarefree_divisors(12) == [1, 2, 3, 6]
    assert squarefree_divisors(1) == [1]


def test_rational_roots():
    assert rational_square_root(9, 4) == (3, 2)
    assert rational_square_root(-9, 4) is None
    assert rational_square_root(8, 2) == (2, 1)
    assert rational_kth_root(16, 81, 4) == (2, 3)
    assert rational_kth_root(16, 80, 4) is None
    with pytest.raises(ZeroDivisionError):
        rational_square_root(1, 0)
