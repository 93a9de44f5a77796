"""Tests of the internal cyclotomic-Kummer degree engine against classical values."""

from __future__ import annotations

from fractions import Fraction

import pytest

from orddens.abelian import (
    ABELIAN_FIELDS,
    RadicalGen,
    choose_entanglement_modulus,
    cyclotomic_degree,
    kronecker,
    kummer_degree,
    multiplicatively_independent,
)


def _gens(*qs):
    return tuple(RadicalGen.from_rational(q) for q in qs)


Q = ABELIAN_FIELDS["Q"]
QZ3 = ABELIAN_FIELDS["Qzeta3"]
QZ4 = ABELIAN_FIELDS["Qzeta4"]
QZ12 = ABELIAN_FIELDS["Qzeta12"]
QM5 = ABELIAN_FIELDS["Qsqrtm5"]


def test_kronecker_symbol():
    # quadratic residues mod 7: 1, 2, 4
    assert [kronecker(a, 7) for a in range(1, 7)] == [1, 1, -1, 1, -1, -1]
    assert kronecker(2, 5) == -1 and kronecker(2, 7) == 1
    assert kronecker(-4, 5) == 1 and kronecker(-4, 7) == -1
    assert kronecker(8, 3) == -1 and kronecker(8, 5) == -1 and kronecker(8, 7) == 1
    assert kronecker(-20, 3) == 1 and kronecker(-20, 7) == 1 and kronecker(-20, 11) == -1


def test_cyclotomic_degrees_over_q():
    for m, want in [(1, 1), (2, 1), (8, 4), (12, 4), (20, 8), (45, 24)]:
        assert cyclotomic_degree(Q, m) == want


def test_cyclotomic_degrees_over_extensions():
    assert cyclotomic_degree(QZ4, 8) == 2
    assert cyclotomic_degree(QZ4, 3) == 2
    assert cyclotomic_degree(QZ4, 12) == 2
    assert cyclotomic_degree(QZ3, 24) == 4
    assert cyclotomic_degree(QZ12, 8) == 2
    # Q(sqrt(-5)): K(zeta_5) = Q(zeta_20), so relative degree phi(20)/2 = 4
    assert cyclotomic_degree(QM5, 5) == 4
    assert cyclotomic_degree(QM5, 4) == 2
    assert cyclotomic_degree(QM5, 20) == 4
    assert cyclotomic_degree(QM5, 3) == 2


def test_degrees_rank_one_over_q():
    g2 = _gens(2)
    # sqrt(2) generates a quadratic extension; zeta_8 already contains it.
    assert kummer_degree(Q, g2, 2, 2) == 2
    assert kummer_degree(Q, g2, 4, 2) == 4
    assert kummer_degree(Q, g2, 8, 2) == 4
    assert kummer_degree(Q, g2, 24, 2) == 8
    assert kummer_degree(Q, g2, 8, 4) == 8
    assert kummer_degree(Q, g2, 8, 8) == 16
    assert kummer_degree(Q, g2, 16, 4) == 16
    g5 = _gens(5)
    # sqrt(5) lies in Q(zeta_5).
    assert kummer_degree(Q, g5, 5, 1) == 4
    assert kummer_degree(Q, g5, 5, 5) == 20
    assert kummer_degree(Q, g5, 20, 2) == 8
    g16 = _gens(16)
    # 16^(1/8) = sqrt(2)
    assert kummer_degree(Q, g16, 8, 8) == 4
    assert kummer_degree(Q, g16, 8, 2) == 4
    g27 = _gens(27)
    # 27^(1/9) = 3^(1/3)
    assert kummer_degree(Q, g27, 9, 9) == 18
    assert kummer_degree(Q, g27, 3, 3) == 2


def test_degrees_negative_generator():
    gm2 = _gens(-2)
    # sqrt(-2) lies in Q(zeta_8)
    assert kummer_degree(Q, gm2, 8, 2) == 4
    assert kummer_degree(Q, gm2, 4, 2) == 4
    # but not in Q(zeta_4): [Q(i, sqrt(-2)) : Q] = 4 = phi(4) * 2
    assert kummer_degree(Q, gm2, 2, 2) == 2


def test_degrees_higher_rank_over_q():
    g23 = _gens(2, 3)
    assert kummer_degree(Q, g23, 1, 1) == 1
    assert kummer_degree(Q, g23, 2, 2) == 4
    # sqrt(2), sqrt(3) both in Q(zeta_24)
    assert kummer_degree(Q, g23, 24, 2) == 8
    assert kummer_degree(Q, g23, 4, 2) == 8
    assert kummer_degree(Q, g23, 8, 2) == 8
    # sqrt(3) lies in Q(zeta_12) but sqrt(2) does not
    assert kummer_degree(Q, g23, 12, 2) == 8


def test_degrees_over_qzeta4():
    g2 = _gens(2)
    assert kummer_degree(QZ4, g2, 2, 2) == 2
    assert kummer_degree(QZ4, g2, 8, 2) == 2
    assert kummer_degree(QZ4, g2, 4, 4) == 4
    assert kummer_degree(QZ4, g2, 8, 8) == 8
    # 2*zeta_4 = 2i: sqrt(2i) = 1 + i already lies in Q(i).
    g2i = (RadicalGen(2, 1, 1, 4),)
    assert kummer_degree(QZ4, g2i, 2, 2) == 1
    assert kummer_degree(QZ4, g2i, 4, 2) == 1
    assert kummer_degree(QZ4, g2i, 4, 4) == 2
    assert kummer_degree(QZ4, g2i, 8, 4) == 4
    assert kummer_degree(QZ4, g2i, 8, 8) == 8


def test_degrees_over_qsqrtm5():
    g2 = _gens(2)
    assert kummer_degree(QM5, g2, 1, 1) == 1
    assert kummer_degree(QM5, g2, 2, 2) == 2
    assert kummer_degree(QM5, g2, 4, 2) == 4
    assert kummer_degree(QM5, g2, 8, 1) == 4
    assert kummer_degree(QM5, g2, 8, 2) == 4
    assert kummer_degree(QM5, g2, 8, 8) == 16


def test_degrees_over_qzeta3():
    g2 = _gens(2)
    # K(zeta_8, sqrt2) = Q(zeta_24): degree phi(24)/2 over K, sqrt2 absorbed
    assert kummer_degree(QZ3, g2, 8, 2) == 4
    assert kummer_degree(QZ3, g2, 2, 2) == 2
    g3 = _gens(3)
    # sqrt(-3) in Q(zeta_3); sqrt(3) needs zeta_4: Kummer part collapses at m=4
    assert kummer_degree(QZ3, g3, 2, 2) == 2
    assert kummer_degree(QZ3, g3, 4, 2) == 2    # = [K(zeta_4):K], sqrt3 in Q(zeta_12)
    assert kummer_degree(QZ3, g3, 12, 2) == 2


def test_degree_divides_generic_bound():
    import math

    cases = [
        (Q, _gens(2)), (Q, _gens(12)), (Q, _gens(2, 3)), (QZ4, _gens(6)),
        (QZ3, _gens(Fraction(4, 9))), (QM5, _gens(10)),
    ]
    for ab, gens in cases:
        r = len(gens)
        for m in range(1, 40):
            for n in (1, 2, 3, 4, 6, 12):
                if m % n:
                    continue
                d = kummer_degree(ab, gens, m, n)
                from orddens.arith import euler_phi

                assert euler_phi(m) * n ** r % d == 0
                assert d >= 1


def test_tower_monotonicity_sample():
    gens = _gens(2, 3)
    for (m1, n1), (m2, n2) in [((2, 2), (4, 2)), ((4, 2), (8, 4)), ((6, 2), (12, 4)),
                               ((3, 1), (9, 3)), ((12, 2), (24, 24))]:
        d1 = kummer_degree(Q, gens, m1, n1)
        d2 = kummer_degree(Q, gens, m2, n2)
        assert d2 % d1 == 0


def test_independence_check():
    assert multiplicatively_independent(_gens(2, 3))
    assert multiplicatively_independent(_gens(2))
    assert multiplicatively_independent(_gens(6, 10, 15))
    assert not multiplicatively_independent(_gens(2, -2))
    assert not multiplicatively_independent(_gens(4, 8))
    assert not multiplicatively_independent(_gens(-2, -3, 6))


def test_entanglement_modulus_heuristic():
    assert choose_entanglement_modulus(Q, _gens(2)) == 8
    assert choose_entanglement_modulus(Q, _gens(16)) % 32 == 0
    assert choose_entanglement_modulus(Q, _gens(5)) % 5 == 0
    z = choose_entanglement_modulus(QM5, _gens(2, 27, 25))
    assert z % 20 == 0 and z % 8 == 0 and z % 9 == 0


def test_lift_identity_against_engine():
    """The finite table at divisors of z determines all degrees via the lift rule."""
    import math

    from orddens.arith import euler_phi

    cases = [
        (Q, _gens(2)), (Q, _gens(16)), (Q, _gens(27)), (Q, _gens(2, 3)),
        (QZ4, (RadicalGen(2, 1, 1, 4),)), (QZ3, _gens(3)), (QM5, _gens(2)),
    ]
    for ab, gens in cases:
        r = len(gens)
        z = choose_entanglement_modulus(ab, gens)
        for m in list(range(1, 61)) + [7 * 9, 11 * 8, 13 * 5, 3 * 64, 100, 180]:
            for n in set([1, 2, 3, 4, 5, 6, 8, 9, 12, 16, m, m // 2 if m % 2 == 0 else 1]):
                if n < 1 or m % n:
                    continue
                g, h = math.gcd(m, z), math.gcd(n, z)
                lifted = (
                    euler_phi(m) * n ** r
                    * kummer_degree(ab, gens, g, h)
                    // (euler_phi(g) * h ** r)
                )
                assert lifted == kummer_degree(ab, gens, m, n), (ab, m, n)
