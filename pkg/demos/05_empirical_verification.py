#!/usr/bin/env python3
"""Count actual primes and compare with the exact densities.

Exact values are certified algebraically; this script shows the honest
empirical side: enumerate degree-1 primes up to a million, compute orders in
the residue fields, and watch frequencies settle near the predictions.
"""

import time

from orddens import (
    Divisible,
    GroupSpec,
    KummerSplit,
    BUILTIN_FIELDS,
    bundled_table,
    compute_degree_table_Q,
    count_events,
    empirical_degree_check,
    rho_closed,
)

X = 10 ** 6

Q = BUILTIN_FIELDS["Q"]
group = GroupSpec.make(Q, "2")
table = compute_degree_table_Q(group)

events = [Divisible(m) for m in (2, 3, 12)]
t0 = time.time()
counts = count_events(Q, group, events, X)
print(f"<2> over Q, primes up to {X:,} ({time.time() - t0:.1f}s):")
for ev, count in zip(events, counts):
    exact = rho_closed(ev.m, group, table).exact
    print(f"  m={ev.m:<3} empirical {count.ratio:.5f}   exact {float(exact):.5f} = {exact}"
          f"   ({count.matched}/{count.total})")

# splitting frequencies estimate reciprocal degrees: the sqrt(5) entanglement
group5 = GroupSpec.make(Q, "5")
check = empirical_degree_check(Q, group5, compute_degree_table_Q(group5), 5, 1, X)
print(f"\n<5>: primes with p = 1 mod 5 and 5 a residue: ratio {check.ratio:.5f}"
      "  (1/4, not 1/20: sqrt(5) is cyclotomic)")

# a field where ideals above split primes are counted separately
field4 = BUILTIN_FIELDS["Qzeta4"]
group4 = GroupSpec.make(field4, "2a")
t0 = time.time()
count4 = count_events(field4, group4, [Divisible(2)], X)[0]
exact4 = rho_closed(2, group4, bundled_table("Qzeta4", "2a")).exact
print(f"\n<2*zeta_4> over Q(zeta_4) ({time.time() - t0:.1f}s): "
      f"empirical {count4.ratio:.5f}, exact {exact4} = {float(exact4):.5f}")
print(f"  ({count4.total} prime ideals from {count4.total // 2} split rational primes)")
