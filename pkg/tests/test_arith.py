"""Tests for exact arithmetic, checked against independent brute-force oracles."""

from __future__ import annotations

import math
import random

import pytest

from orddens.arith import (
    FactoredInt,
    divisors,
    euler_phi,
    factorize,
    gcd_supernatural,
    is_kfree,
    is_prime,
    mobius,
    radical,
    smooth_divisors,
    tau,
    valuation,
)


def _trial_division(n: int) -> dict[int, int]:
    """Independent oracle: plain trial division up to sqrt(n)."""
    fac: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            fac[d] = fac.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        fac[n] = fac.get(n, 0) + 1
    return fac


def _mu_sieve(bound: int) -> list[int]:
    """Independent oracle: Mobius values by sieving, no factorization shared."""
    mu = [1] * (bound + 1)
    primes = []
    is_comp = [False] * (bound + 1)
    for i in range(2, bound + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            if i * p > bound:
                break
            is_comp[i * p] = True
            if i % p == 0:
                mu[i * p] = 0
                break
            mu[i * p] = -mu[i]
    return mu


def test_factorize_small_cases():
    assert factorize(12).sign == 1
    assert factorize(12).as_dict() == {2: 2, 3: 1}
    assert factorize(1).as_dict() == {}
    assert factorize(1).sign == 1
    assert factorize(-18).sign == -1
    assert factorize(-18).as_dict() == {2: 1, 3: 2}


def test_factorize_against_trial_division_oracle():
    assert factorize(600851475143).as_dict() == _trial_division(600851475143)
    assert factorize(600851475143).as_dict() == {71: 1, 839: 1, 1471: 1, 6857: 1}


def test_factorize_zero_rejected():
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_reconstruct_roundtrip():
    rng = random.Random(20240817)
    for _ in range(300):
        n = rng.randint(1, 10 ** 12) * rng.choice([1, -1])
        f = factorize(n)
        assert f.value() == n
        assert f.as_dict() == _trial_division(abs(n))


def test_factorize_large_semiprime():
    p, q = 1_000_003, 999_999_999_989
    f = factorize(p * q)
    assert f.as_dict() == {p: 1, q: 1}


def test_factored_int_invariants_enforced():
    with pytest.raises(ValueError):
        FactoredInt(1, ((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        FactoredInt(1, ((2, 0),))
    with pytest.raises(ValueError):
        FactoredInt(0, ())


def test_is_prime_spot_checks():
    assert is_prime(2) and is_prime(3) and is_prime(999_999_999_989)
    assert not is_prime(1) and not is_prime(561) and not is_prime(2 ** 64 - 1)
    # A prime above 2**64 exercises the fixed large witness set.
    assert is_prime(2 ** 89 - 1)


def test_mobius_examples():
    assert mobius(1) == 1
    assert mobius(6) == 1
    assert mobius(12) == 0
    assert mobius(30) == -1


def test_mobius_fundamental_identity():
    # sum_{d|n} mu(d) = [n == 1] for n <= 10**4, against the sieve oracle.
    mu = _mu_sieve(10 ** 4)
    for n in range(1, 10 ** 4 + 1):
        assert mobius(n) == mu[n]
    for n in list(range(1, 200)) + [9973, 10000]:
        total = sum(mobius(d) for d in divisors(n))
        assert total == (1 if n == 1 else 0)


def test_phi_rad_tau_examples():
    assert euler_phi(12) == 4 and radical(12) == 6 and tau(12) == 6
    assert euler_phi(1) == 1 and radical(1) == 1 and tau(1) == 1
    assert valuation(48, 2) == 4 and valuation(48, 5) == 0


def test_phi_sum_identity():
    for n in list(range(1, 500)) + [2 ** 10, 3 * 7 * 11 * 13, 10 ** 4]:
        assert sum(euler_phi(d) for d in divisors(n)) == n


def test_divisors_examples():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    assert divisors(97) == [1, 97]
    assert len(divisors(2 ** 5 * 3 ** 2)) == tau(2 ** 5 * 3 ** 2)


def test_smooth_divisors_examples():
    assert smooth_divisors(2, 10) == [1, 2, 4, 8]
    assert smooth_divisors(6, 12) == [1, 2, 3, 4, 6, 8, 9, 12]
    assert smooth_divisors(1, 100) == [1]


def test_smooth_divisors_against_brute_force():
    rng = random.Random(7)
    cases = [(m, b) for m in range(1, 51) for b in (1, 2, 37, 1000)]
    cases += [(rng.randint(1, 50), rng.randint(1, 1000)) for _ in range(50)]
    for m, bound in cases:
        brute = [
            n
            for n in range(1, bound + 1)
            if all(p in factorize(m).primes() for p in factorize(n).primes())
        ]
        assert smooth_divisors(m, bound) == brute


def test_gcd_supernatural_examples():
    assert gcd_supernatural(12, 2) == 4
    assert gcd_supernatural(45, 6) == 9
    assert gcd_supernatural(7, 10) == 1


def test_gcd_supernatural_properties():
    rng = random.Random(99)
    for _ in range(200):
        n, m = rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 4)
        g = gcd_supernatural(n, m)
        assert n % g == 0
        assert math.gcd(n // g, m) == 1
        # g is exactly prod ell**v_ell(n) over ell | m.
        expect = 1
        for p in factorize(m).primes():
            expect *= p ** valuation(n, p)
        assert g == expect


def test_kfree():
    assert is_kfree(12, 3)
    assert not is_kfree(12, 2)
    assert is_kfree(30, 2)
    with pytest.raises(ValueError):
        is_kfree(10, 1)
