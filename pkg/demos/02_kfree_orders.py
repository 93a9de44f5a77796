#!/usr/bin/env python3
"""Densities of primes whose order is k-free.

These densities are rational multiples of universal constants A(k, r) that
depend only on k and the rank r.  The script evaluates the constants, then
the k-free densities for groups over Q(zeta_3) and Q(zeta_4) using the
bundled degree tables, and checks the series oracle brackets the value.
"""

from orddens import A_constant, GroupSpec, BUILTIN_FIELDS, bundled_table
from orddens import beta_closed, beta_series

print("universal constants A(k, r), truncated over primes below 1e5:")
print("  r\\k " + "".join(f"{k:>10}" for k in range(2, 7)))
for r in (1, 2, 3):
    row = [A_constant(k, r)[0] for k in range(2, 7)]
    print(f"  {r}  " + "".join(f"{v:>10.6f}" for v in row))

print()
for field_label, gens in [("Qzeta3", "2"), ("Qzeta3", "2,27,25"), ("Qzeta4", "16")]:
    field = BUILTIN_FIELDS[field_label]
    group = GroupSpec.make(field, gens)
    table = bundled_table(field_label, gens)
    print(f"group <{gens}> over {field_label}:")
    for k in (2, 3, 4, 5):
        value = beta_closed(k, group, table).scaled
        print(f"  beta_{k} = {value.multiplier} * A({value.k},{value.r})"
              f" = {value.approx:.6f}")
    print()

group = GroupSpec.make(BUILTIN_FIELDS["Qzeta3"], "2")
table = bundled_table("Qzeta3", "2")
series = beta_series(2, group, table, m_cutoff=60)
lo, hi = series.interval
closed = beta_closed(2, group, table).scaled.approx
print(f"series bracket for beta_2 of <2> over Qzeta3: [{float(lo):.3f}, {float(hi):.3f}]"
      f" contains the closed value {closed:.3f}")

# a squareful torsion part forces the k-free density to vanish
field = BUILTIN_FIELDS["Qzeta4"]
group = GroupSpec.make(field, "3", torsion_order=4)
value = beta_closed(2, group, bundled_table("Qzeta4", "3"))
print("with zeta_4 in the group, beta_2 =", value.scaled.multiplier,
      "(4 | ord at every prime)")
