"""Exact integer arithmetic and elementary multiplicative number theory.

Everything here is exact: integers are arbitrary precision, rationals are
`fractions.Fraction`, and factorizations are certified (deterministic
Miller-Rabin below 2**64, 40 fixed witnesses above).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

Rat = Fraction

# Deterministic Miller-Rabin witnesses, sufficient for all n < 3.3e24 (covers 2**64).
_MR_SMALL_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Fixed witness set for larger inputs: the first 40 primes.
_MR_LARGE_BASES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
    149, 151, 157, 163, 167, 173,
)

_TRIAL_BOUND = 10 ** 6
_small_primes_cache: list[int] | None = None


def small_primes() -> list[int]:
    """Primes below 10**6, sieved once and cached."""
    global _small_primes_cache
    if _small_primes_cache is None:
        bound = _TRIAL_BOUND
        sieve = bytearray([1]) * (bound + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, math.isqrt(bound) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytes(len(sieve[p * p :: p]))
        _small_primes_cache = [i for i in range(bound + 1) if sieve[i]]
    return _small_primes_cache


def is_prime(n: int) -> bool:
    """Primality test: deterministic below 2**64, 40 fixed witnesses above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_SMALL_BASES if n < 1 << 64 else _MR_LARGE_BASES
    for a in bases:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite n via Brent's cycle-finding rho.

    Deterministic: the (y, c) parameters walk a fixed sequence, so repeated
    runs factor identically.
    """
    if n % 2 == 0:
        return 2
    for seed in range(1, 100):
        y, c, m = seed, seed + 1, 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


@dataclass(frozen=True)
class FactoredInt:
    """A nonzero integer as sign times a product of prime powers.

    `factors` maps strictly increasing primes to exponents >= 1;
    reconstructing sign * prod(p**e) recovers the original integer.
    """

    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        last = 0
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError("factors must have increasing primes and exponents >= 1")
            last = p

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p ** e
        return v

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        return self.as_dict().get(p, 0)

    def __int__(self) -> int:
        return self.value()


def factorize(n: int) -> FactoredInt:
    """Exact factorization of a nonzero integer.

    Trial division by primes below 10**6, then Pollard rho with Brent cycle
    detection on what remains (primality certified by `is_prime`).
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    n = abs(n)
    fac: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
    # n is now 1, a prime, or has no factor below 10**6.
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            fac[m] = fac.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.append(d)
        stack.append(m // d)
    return FactoredInt(sign, tuple(sorted(fac.items())))


def _coerce(n: int | FactoredInt) -> FactoredInt:
    if isinstance(n, FactoredInt):
        return n
    return factorize(n)


def mobius(n: int | FactoredInt) -> int:
    """Mobius function: 0 on squareful n, else (-1)**(number of prime factors)."""
    f = _coerce(n)
    if f.sign < 0:
        raise ValueError("mobius requires n >= 1")
    if any(e >= 2 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def euler_phi(n: int | FactoredInt) -> int:
    f = _coerce(n)
    if f.sign < 0:
        raise ValueError("euler_phi requires n >= 1")
    v = 1
    for p, e in f.factors:
        v *= (p - 1) * p ** (e - 1)
    return v


def radical(n: int | FactoredInt) -> int:
    f = _coerce(n)
    if f.sign < 0:
        raise ValueError("radical requires n >= 1")
    return reduce(lambda a, p: a * p, f.primes(), 1)


def tau(n: int | FactoredInt) -> int:
    """Number of positive divisors."""
    f = _coerce(n)
    if f.sign < 0:
        raise ValueError("tau requires n >= 1")
    v = 1
    for _, e in f.factors:
        v *= e + 1
    return v


def valuation(n: int, ell: int) -> int:
    """Exponent of the prime ell in n (n >= 1)."""
    if n < 1:
        raise ValueError("valuation requires n >= 1")
    if not is_prime(ell):
        raise ValueError("valuation requires a prime ell")
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def divisors(n: int | FactoredInt) -> list[int]:
    """All positive divisors of n, ascending."""
    f = _coerce(n)
    if f.sign < 0:
        raise ValueError("divisors requires n >= 1")
    out = [1]
    for p, e in f.factors:
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


def smooth_divisors(m: int, bound: int) -> list[int]:
    """All n <= bound whose prime factors all divide m, ascending.

    These are the n with n | m**oo (the supernatural power of m).
    """
    if m < 1 or bound < 1:
        raise ValueError("smooth_divisors requires m >= 1 and bound >= 1")
    primes = factorize(m).primes()
    out = [1]
    for p in primes:
        extended = []
        for d in out:
            v = d * p
            while v <= bound:
                extended.append(v)
                v *= p
        out.extend(extended)
    return sorted(out)


def gcd_supernatural(n: int, m: int) -> int:
    """The m-smooth part of n: prod over primes ell | m of ell**v_ell(n)."""
    if n < 1 or m < 1:
        raise ValueError("gcd_supernatural requires n, m >= 1")
    g = math.gcd(n, m)
    out = 1
    while g > 1:
        out *= g
        n //= g
        g = math.gcd(n, g)
    return out


def is_squarefree(n: int | FactoredInt) -> bool:
    return mobius(n) != 0


def is_kfree(n: int | FactoredInt, k: int) -> bool:
    """True when no k-th power > 1 divides n."""
    if k < 2:
        raise ValueError("k-free requires k >= 2")
    f = _coerce(n)
    return all(e < k for _, e in f.factors)
