"""Prime enumeration, order computation, and event counting."""

from __future__ import annotations

import math

import pytest

from orddens.arith import valuation
from orddens.empirical import (
    Coprime,
    Divisible,
    EmpiricalCount,
    KFree,
    KummerSplit,
    ValuationProfile,
    _distinct_primes_trial,
    compute_bad_primes,
    count_event,
    count_events,
    event_name,
    field_discriminant,
    ord_index,
    parse_event,
    prime_stream,
    reduce_generator,
    roots_mod_p,
)
from orddens.kummer import BUILTIN_FIELDS, GroupSpec

Q = BUILTIN_FIELDS["Q"]
QZ4 = BUILTIN_FIELDS["Qzeta4"]
QM5 = BUILTIN_FIELDS["Qsqrtm5"]


def test_prime_stream_small():
    assert list(prime_stream(10)) == [2, 3, 5, 7]
    assert list(prime_stream(2)) == [2]
    with pytest.raises(ValueError):
        list(prime_stream(1))


def test_prime_stream_pi_1e6():
    # classical count, recomputed here with an independent one-shot sieve
    bound = 10 ** 6
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(sieve[p * p :: p]))
    want = sum(sieve)
    assert want == 78498
    assert sum(1 for _ in prime_stream(bound, segment=1 << 14)) == want


def test_roots_examples():
    assert roots_mod_p((1, 0, 1), 5) == [2, 3]
    assert roots_mod_p((1, 0, 1), 7) == []
    assert len(roots_mod_p((1, 0, -1, 0, 1), 13)) == 4


def test_roots_against_brute_force():
    polys = [(1, 0, 1), (1, 1, 1), (5, 0, 1), (1, 0, -1, 0, 1)]
    for poly in polys:
        for p in prime_stream(250):
            if p < 5:
                continue
            brute = sorted(a for a in range(p) if _eval(poly, a, p) == 0)
            assert roots_mod_p(poly, p) == brute


def _eval(poly, a, p):
    acc = 0
    for c in reversed(poly):
        acc = (acc * a + c) % p
    return acc


def test_reduce_generator():
    assert reduce_generator((2,), 1, 11, 0) == 2
    # 2a over Qzeta4 at p = 5, root 2: value 4
    assert reduce_generator((0, 2), 1, 5, 2) == 4
    # rational coefficients invert mod p
    assert reduce_generator((1,), 2, 11, 0) == pow(2, 9, 11) * 1 % 11
    with pytest.raises(ArithmeticError):
        reduce_generator((11,), 1, 11, 0)


def test_ord_index_examples():
    from orddens.empirical import OrdIndex

    assert ord_index([2], 7, _distinct_primes_trial(6)) == OrdIndex(3, 2)
    oi = ord_index([2], 17, _distinct_primes_trial(16))
    assert (oi.ord, oi.ind) == (8, 2)
    oi = ord_index([2, 3], 11, _distinct_primes_trial(10))
    assert (oi.ord, oi.ind) == (10, 1)


def test_bad_primes():
    assert compute_bad_primes(Q, GroupSpec.make(Q, "2")) == {2}
    assert {2, 5} <= compute_bad_primes(QM5, GroupSpec.make(QM5, "2"))
    assert {2, 3} <= compute_bad_primes(
        BUILTIN_FIELDS["Qzeta3"], GroupSpec.make(BUILTIN_FIELDS["Qzeta3"], "16,27")
    )
    assert field_discriminant(QZ4) == -4
    assert field_discriminant(BUILTIN_FIELDS["Qzeta3"]) == -3


def test_degree_one_prime_stream():
    from orddens.empirical import degree_one_primes

    primes = list(degree_one_primes(QZ4, GroupSpec.make(QZ4, "2a"), 100))
    for dp in primes:
        assert _eval((1, 0, 1), dp.root, dp.p) == 0
        assert dp.p % 4 == 1  # split primes only
    assert {dp.p for dp in primes} == {5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97}
    assert len(primes) == 22  # two ideals per split prime


def test_divisible_one_counts_everything():
    group = GroupSpec.make(Q, "2")
    count = count_event(Q, group, Divisible(1), 2000)
    assert count.matched == count.total
    assert count.excluded >= 1  # the prime 2


def test_event_parsing_and_names():
    for text, ev in [
        ("div:2", Divisible(2)),
        ("kfree:3", KFree(3)),
        ("val:6,9", ValuationProfile(6, 9)),
        ("coprime:6", Coprime(6)),
        ("kummer:8,2", KummerSplit(8, 2)),
    ]:
        assert parse_event(text) == ev
        assert event_name(ev) == text
    with pytest.raises(ValueError):
        parse_event("div:x")
    with pytest.raises(ValueError):
        parse_event("orders:2")


def test_event_validation():
    group = GroupSpec.make(Q, "2")
    with pytest.raises(ValueError):
        count_event(Q, group, KFree(1), 1000)
    with pytest.raises(ValueError):
        count_event(Q, group, ValuationProfile(4, 2), 1000)
    with pytest.raises(ValueError):
        count_event(Q, group, KummerSplit(4, 3), 1000)


def test_divisibility_event_consistency():
    # m | ord implies d | ord for every d | m, prime by prime
    group = GroupSpec.make(Q, "2")
    events = [Divisible(12), Divisible(6), Divisible(3), Divisible(2), Divisible(1)]
    counts = count_events(Q, group, events, 20000)
    assert counts[0].matched <= counts[1].matched <= counts[2].matched
    assert counts[1].matched <= counts[3].matched * 2  # sanity only
    assert counts[4].matched == counts[4].total


def test_ord_times_ind_and_criterion_equivalence():
    # n | ind iff every generator is an n-th power, checked directly on a sample
    group = GroupSpec.make(Q, "2,3")
    gens = [2, 3]
    sample = 0
    for p in prime_stream(5000):
        if p in (2, 3):
            continue
        fac = _distinct_primes_trial(p - 1)
        oi = ord_index([g % p for g in gens], p, fac)
        assert oi.ord * oi.ind == p - 1
        if p % 100 < 3:  # a few percent of primes
            for n in (2, 3, 4):
                if (p - 1) % n:
                    continue
                direct = all(pow(g, (p - 1) // n, p) == 1 for g in gens)
                assert direct == (oi.ind % n == 0)
                sample += 1
    assert sample > 20


def test_qzeta4_counts_ideals_not_rational_primes():
    group = GroupSpec.make(QZ4, "2a")
    count = count_event(QZ4, group, Divisible(1), 10 ** 4)
    # split primes contribute two ideals each; inert ones none
    pi = sum(1 for _ in prime_stream(10 ** 4))
    assert count.total > 0.8 * pi
    assert abs(count.total - pi) < 0.2 * pi


def test_degree_one_totals_match_field_degree():
    # summed with multiplicity over roots, totals approximate pi(x)
    x = 10 ** 5
    pi = sum(1 for _ in prime_stream(x))
    for field, gens in [(Q, "2"), (QZ4, "2a"), (QM5, "2")]:
        group = GroupSpec.make(field, gens)
        count = count_event(field, group, Divisible(1), x)
        assert abs(count.total - pi) < 0.05 * pi


def test_parallel_matches_serial():
    group = GroupSpec.make(Q, "2")
    events = [Divisible(2), KummerSplit(8, 2), Coprime(3)]
    serial = count_events(Q, group, events, 30000)
    parallel = count_events(Q, group, events, 30000, workers=3)
    for a, b in zip(serial, parallel):
        assert (a.matched, a.total, a.excluded) == (b.matched, b.total, b.excluded)


def test_empirical_count_record():
    count = EmpiricalCount(1000, 250, 1000, 3)
    assert count.record("div:2") == "count div:2 1000 250 1000 3 0.250000"
    empty = EmpiricalCount(1000, 0, 0, 0)
    assert empty.ratio is None
    assert empty.record("div:2").endswith("nan")


def test_kfree_and_valuation_events_small():
    group = GroupSpec.make(Q, "2")
    counts = count_events(
        Q, group, [KFree(2), ValuationProfile(2, 2), Coprime(2)], 3000
    )
    # cross-check against a direct loop
    kfree = val = cop = total = 0
    for p in prime_stream(3000):
        if p == 2:
            continue
        total += 1
        o = ord_index([2 % p], p, _distinct_primes_trial(p - 1)).ord
        if all(o % (q * q) for q in _distinct_primes_trial(o)):
            kfree += 1
        if valuation(o, 2) == 1:
            val += 1
        if o % 2:
            cop += 1
    assert (counts[0].matched, counts[1].matched, counts[2].matched) == (kfree, val, cop)
    assert counts[0].total == total
