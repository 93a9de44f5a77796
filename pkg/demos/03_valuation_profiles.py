#!/usr/bin/env python3
"""Prescribing the 2- and 3-adic valuation of the order.

gamma_{k,m} is the density of primes where, for every prime ell | k, the
order has ell-adic valuation exactly v_ell(m).  Two routes compute it: the
direct closed formula and an inclusion-exclusion over divisibility
densities; they agree identically.  The profiles partition all primes.
"""

from fractions import Fraction

from orddens import GroupSpec, BUILTIN_FIELDS, bundled_table, compute_degree_table_Q
from orddens import gamma_closed, gamma_via_rho, rho_closed


def v(n: int, p: int) -> int:
    out = 0
    while n % p == 0:
        n //= p
        out += 1
    return out


field = BUILTIN_FIELDS["Qsqrtm5"]
group = GroupSpec.make(field, "2,3")
table = bundled_table("Qsqrtm5", "2,3")

print("group <2,3> over Q(sqrt(-5)), profiles of (v_2(ord), v_3(ord)):")
for m in (1, 2, 3, 4, 6, 9, 12):
    direct = gamma_closed(6, m, group, table).exact
    moebius = gamma_via_rho(6, m, group, table).exact
    assert direct == moebius
    print(f"  gamma_6,{m:<2}  (v2, v3) = ({v(m, 2)}, {v(m, 3)})   "
          f"{str(direct):>10} = {float(direct):.6f}")

# fixing one prime: the profiles v_2 = 0, 1, 2, ... together with the
# divisibility density of the next power account for every prime
group_q = GroupSpec.make(BUILTIN_FIELDS["Q"], "2")
table_q = compute_degree_table_Q(group_q)
total = Fraction(0)
print("\npartition over v_2(ord) for <2> over Q:")
for a in range(5):
    g = gamma_closed(2, 2 ** a, group_q, table_q).exact
    total += g
    print(f"  P(v_2 = {a}) = {g}")
rest = rho_closed(2 ** 5, group_q, table_q).exact
print(f"  P(v_2 >= 5) = {rest}")
print(f"  total = {total + rest}")
