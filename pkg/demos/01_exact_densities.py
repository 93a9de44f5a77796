#!/usr/bin/env python3
"""How often does m divide the order of 2 modulo a prime?

The density of primes p with m | ord_p(2) is an exact rational.  This script
computes a few of them natively over Q, shows the closed value agreeing with
the truncated-series oracle, and prints the entanglement data behind it.
"""

from fractions import Fraction

from orddens import GroupSpec, BUILTIN_FIELDS, compute_degree_table_Q
from orddens import rho_closed, rho_series, coprime_density

Q = BUILTIN_FIELDS["Q"]

group = GroupSpec.make(Q, "2")
table = compute_degree_table_Q(group)

print(f"group <2> over Q, entanglement modulus z = {table.z}")
print(f"degree table: {len(table.entries)} entries, e.g. [Q(zeta_8, sqrt2) : Q] = "
      f"{table.entries[(8, 2)]} (the sqrt(2) entanglement)\n")

print(" m   density of m | ord_p(2)     series bracket")
for m in (1, 2, 3, 4, 5, 8, 12, 16, 27, 100):
    exact = rho_closed(m, group, table).exact
    lo, hi = rho_series(m, group, table).interval
    print(f"{m:3d}  {str(exact):>12}  = {float(exact):.6f}   "
          f"[{float(lo):.8f}, {float(hi):.8f}]")

print()
print("odd order: density of gcd(ord, 2) = 1 is",
      coprime_density(2, group, table).exact, "= 1 - 17/24")

# a rank-3 example: densities react to the arithmetic of all generators
group3 = GroupSpec.make(Q, "2,27,25")
table3 = compute_degree_table_Q(group3)
print(f"\ngroup <2,27,25> (rank 3): z = {table3.z}")
for m in (2, 6, 12):
    print(f"  rho_{m} = {rho_closed(m, group3, table3).exact}")
